#include "elommr/contest.hpp"

#include <algorithm>

#include "elommr/error.hpp"

namespace elommr {

std::size_t ContestStandings::participant_count() const {
  std::size_t n = 0;
  for (const auto& group : groups) n += group.size();
  return n;
}

bool is_valid_id(std::string_view id) {
  if (id.empty()) return false;
  for (const char c : id) {
    if (c == '[' || c == ']' || c == ':' || c == '#' || c == ' ' || c == '\t' ||
        c == '\n' || c == '\r' || c == '\v' || c == '\f') {
      return false;
    }
  }
  return true;
}

void validate_contest(const ContestStandings& contest) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::kValidation, "contest '" + contest.id + "': " + what);
  };
  if (contest.groups.empty()) fail("no standings");
  if (contest.beta_override && !(*contest.beta_override > 0.0)) fail("beta must be positive");
  std::vector<const std::string*> seen;
  seen.reserve(contest.participant_count());
  for (const auto& group : contest.groups) {
    if (group.empty()) fail("empty tie group");
    for (const auto& id : group) {
      if (!is_valid_id(id)) fail("invalid player id '" + id + "'");
      seen.push_back(&id);
    }
  }
  std::sort(seen.begin(), seen.end(), [](auto* a, auto* b) { return *a < *b; });
  for (std::size_t k = 1; k < seen.size(); ++k) {
    if (*seen[k] == *seen[k - 1]) fail("player '" + *seen[k] + "' appears more than once");
  }
}

}  // namespace elommr
