#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "elommr/params.hpp"

namespace elommr {

// One logistic factor of a player's posterior. `weight` is multiplicity / beta^2,
// so the multiplicity lies in (0, 1] and shrinks with every pseudodiffusion.
struct PerformanceFactor {
  double center = 0.0;
  double beta = 0.0;
  double weight = 0.0;

  double multiplicity() const { return weight * beta * beta; }
  friend bool operator==(const PerformanceFactor&, const PerformanceFactor&) = default;
};

// Posterior belief about one player's skill: a Gaussian factor followed by the
// chronological list of logistic performance factors. `mu` and `sigma` are
// caches maintained by the engine; 1 / sigma^2 always equals total_weight().
struct PlayerState {
  double gaussian_center = 0.0;
  double gaussian_weight = 0.0;
  std::vector<PerformanceFactor> factors;
  double mu = 0.0;
  double sigma = 0.0;
  std::int64_t contest_count = 0;
  std::int64_t last_update_round = -1;

  double total_weight() const;
  // Recomputes sigma from the weight sum.
  void refresh_sigma();
  bool is_gaussian_only() const { return factors.empty(); }

  friend bool operator==(const PlayerState&, const PlayerState&) = default;
};

struct RatingSummary {
  std::string player_id;
  double mu = 0.0;
  double sigma = 0.0;
  std::int64_t contest_count = 0;

  double display() const { return mu; }
};

PlayerState new_player(double mu_newcomer, double sigma_newcomer);
PlayerState new_player(const SystemParams& params);

// Appends a factor (p, beta, 1 / beta^2) and bumps the contest count.
void push_performance(PlayerState& state, double performance, double beta);

// Folds the oldest logistic factors into the Gaussian factor by
// precision-weighted merge until at most `max_len` remain. Total weight is
// unchanged; the rating cache is left for the engine to refresh.
void compress_history(PlayerState& state, std::size_t max_len);

}  // namespace elommr
