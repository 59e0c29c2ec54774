#pragma once

// The two per-round update phases: estimating each participant's performance
// from the standings, then folding that performance into their posterior.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "elommr/params.hpp"
#include "elommr/player_state.hpp"

namespace elommr {

struct RoundEntry {
  std::string player_id;
  double prior_rating = 0.0;  // post-diffusion rating
  double delta = 0.0;         // stddev of the performance prior, sqrt(sigma^2 + beta^2)
  int tie_group = 0;          // 0 is the winning group
};

// Immutable snapshot of a round, entries in standing order. Shared read-only
// by every worker during performance estimation.
class RoundView {
 public:
  RoundView() = default;
  // Throws Error(kValidation) unless tie groups start at 0, are non-decreasing,
  // and never skip an index, and every delta is positive.
  explicit RoundView(std::vector<RoundEntry> entries);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const RoundEntry& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const RoundEntry> entries() const { return entries_; }

  // Entry indices sorted by (prior_rating, player_id) ascending, and the
  // inverse permutation.
  std::span<const std::size_t> rating_order() const { return rating_order_; }
  std::size_t rating_position(std::size_t i) const { return rating_position_[i]; }

 private:
  std::vector<RoundEntry> entries_;
  std::vector<std::size_t> rating_order_;
  std::vector<std::size_t> rating_position_;
};

// Opponents of player i sorted into the three evidence classes.
struct EvidenceSplit {
  std::vector<std::size_t> losers_to;    // better ranked
  std::vector<std::size_t> winners_over; // worse ranked
  std::vector<std::size_t> tied_with;    // same group, i included
};

EvidenceSplit split_evidence(std::size_t i, const RoundView& view);

// Performance estimate: the unique zero of
//   sum_{j above i} l_j + sum_{j tied with i, i included} d_j + sum_{j below i} v_j.
// With `opponents` empty the whole field is used; otherwise only the listed
// entries (i itself is always added as a self-tie).
double estimate_performance(std::size_t i, const RoundView& view, PerformanceModel model,
                            double tol = kDefaultTolerance, const TieWeights& ties = {},
                            std::span<const std::size_t> opponents = {});

// Restricts the opponents used for performance estimation to at most `cap`
// entries (see subsample_opponents).
class OpponentSampler {
 public:
  OpponentSampler(const RoundView& view, std::size_t cap, SubsampleMode mode);

  // True when every player sees the whole field.
  bool is_full_field() const { return full_field_; }
  // Opponent indices (never including i), ascending.
  std::vector<std::size_t> opponents_of(std::size_t i) const;

 private:
  std::vector<std::size_t> nearest_to(std::size_t i) const;

  const RoundView* view_;
  std::size_t cap_;
  SubsampleMode mode_;
  bool full_field_;
  std::vector<std::size_t> shared_;
};

// kPerPlayer: the `cap` opponents whose prior ratings are closest to i's (ties
// by player id). kGlobal: one subset shared by all players, built from the
// ratings nearest the field median plus the first and last finishers. In both
// modes a better-ranked and a worse-ranked opponent are kept whenever the
// field has one.
std::vector<std::size_t> subsample_opponents(std::size_t i, const RoundView& view,
                                             std::size_t cap, SubsampleMode mode);

// MAP rating of a posterior: the zero of
//   w_0 (s - p_0) + sum_k (omega_k / beta_bar_k) tanh((s - p_k) / (2 beta_bar_k)).
double solve_rating(const PlayerState& state, double tol = kDefaultTolerance);

// Phase two for one player. Appends the round's factor and refreshes mu and
// sigma according to the variant:
//  - kChi: Gaussian product, closed form.
//  - kRho: logistic factor kept in the history, mu re-solved.
//  - kInfinity: mu solved against prior x new logistic factor, which is then
//    collapsed into the Gaussian factor at the new mu.
void update_belief(PlayerState& state, double performance, double beta, Variant variant,
                   double tol = kDefaultTolerance);

struct AverageWeight {
  std::size_t index = 0;  // 0: Gaussian factor, k >= 1: factors[k - 1]
  double center = 0.0;
  double weight = 0.0;
};

// Weights under which the cached rating is the weighted mean of all factor
// centres. Diagnostic only.
std::vector<AverageWeight> robust_average_weights(const PlayerState& state);

}  // namespace elommr
