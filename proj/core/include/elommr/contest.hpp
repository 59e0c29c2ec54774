#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace elommr {

// One round's outcome: tie groups in finishing order, best first.
struct ContestStandings {
  std::string id;
  std::int64_t index = 0;
  std::vector<std::vector<std::string>> groups;
  std::optional<double> beta_override;
  std::optional<std::int64_t> timestamp;

  std::size_t participant_count() const;
  friend bool operator==(const ContestStandings&, const ContestStandings&) = default;
};

// Records read from a contest file are plain standings.
using ContestRecord = ContestStandings;

// Player and contest ids are non-empty and contain no whitespace, brackets,
// colons or '#'.
bool is_valid_id(std::string_view id);

// Throws Error(kValidation) on empty standings, empty groups, malformed or
// repeated player ids, or a non-positive beta override.
void validate_contest(const ContestStandings& contest);

}  // namespace elommr
