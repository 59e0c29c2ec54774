#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "elommr/contest.hpp"
#include "elommr/params.hpp"
#include "elommr/player_state.hpp"

namespace elommr {

using PlayerMap = std::unordered_map<std::string, PlayerState>;

struct RoundResult {
  std::string player_id;
  int tie_group = 0;
  bool newcomer = false;
  double prior_rating = 0.0;  // after diffusion, before the round's evidence
  double prior_sigma = 0.0;
  double performance = 0.0;
  double new_rating = 0.0;
  double new_sigma = 0.0;

  friend bool operator==(const RoundResult&, const RoundResult&) = default;
};

struct RoundReport {
  std::string contest_id;
  std::int64_t index = 0;
  double beta = 0.0;
  std::vector<RoundResult> results;  // standing order

  friend bool operator==(const RoundReport&, const RoundReport&) = default;
};

// Processes one round: newcomers are initialised, every participant is
// diffused, a snapshot of prior ratings is taken, performances are estimated
// from that snapshot, and finally each posterior is updated. Each phase fans
// out over `threads` workers; the result does not depend on the worker count.
// The update is all-or-nothing: on any error `states` is left untouched.
RoundReport process_round(PlayerMap& states, const ContestStandings& contest,
                          const SystemParams& params, std::size_t threads = 1);

// Players sorted by rating descending, ties by id ascending.
std::vector<RatingSummary> rating_summary(const PlayerMap& states);

class RatingSystem {
 public:
  explicit RatingSystem(SystemParams params, std::size_t threads = 1);

  RoundReport process_round(const ContestStandings& contest);
  std::vector<RatingSummary> leaderboard() const { return rating_summary(players_); }

  const SystemParams& params() const { return params_; }
  const PlayerMap& players() const { return players_; }
  PlayerMap& mutable_players() { return players_; }
  std::size_t threads() const { return threads_; }
  void set_threads(std::size_t threads) { threads_ = threads == 0 ? 1 : threads; }

 private:
  SystemParams params_;
  std::size_t threads_;
  PlayerMap players_;
};

}  // namespace elommr
