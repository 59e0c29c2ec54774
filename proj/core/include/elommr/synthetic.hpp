#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "elommr/contest.hpp"

namespace elommr {

// Gaussian latent-skill model. Spreads are standard deviations in rating units.
struct SyntheticConfig {
  std::size_t num_players = 10000;
  std::size_t num_rounds = 50;
  double skill_mean = 1500.0;
  double skill_spread = 300.0;
  double perf_spread = 200.0;
  double drift_spread = 35.0;
  double participation = 1.0;  // probability that a player enters a given round
  std::uint64_t seed = 1;

  void validate() const;
};

struct SkillSample {
  std::string player_id;
  double skill = 0.0;
  double performance = 0.0;
};

struct SyntheticDataset {
  std::vector<ContestRecord> contests;
  // truth[t] lists the participants of contests[t] in standing order with the
  // skill and performance that produced the ranking.
  std::vector<std::vector<SkillSample>> truth;
};

// Initial skills ~ N(skill_mean, skill_spread); each round every participant
// performs at skill + N(0, perf_spread) and is ranked by performance; after
// the round every skill moves by N(0, drift_spread). Fully determined by seed.
SyntheticDataset generate_synthetic(const SyntheticConfig& cfg);

std::string synthetic_player_id(std::size_t index, std::size_t num_players);

// Sidecar format: header line, then "<contest> <player> <skill> <performance>".
void write_ground_truth(std::ostream& out, const SyntheticDataset& data);
void write_ground_truth(const std::filesystem::path& path, const SyntheticDataset& data);

}  // namespace elommr
