#include "elommr/system.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "elommr/drift.hpp"
#include "elommr/engine.hpp"
#include "elommr/error.hpp"
#include "elommr/parallel.hpp"

namespace elommr {

RoundReport process_round(PlayerMap& states, const ContestStandings& contest,
                          const SystemParams& params, std::size_t threads) {
  params.validate();
  validate_contest(contest);
  const double beta = contest.beta_override.value_or(params.beta);

  const std::size_t n = contest.participant_count();
  std::vector<const std::string*> ids;
  std::vector<int> groups;
  ids.reserve(n);
  groups.reserve(n);
  for (std::size_t g = 0; g < contest.groups.size(); ++g) {
    for (const auto& id : contest.groups[g]) {
      ids.push_back(&id);
      groups.push_back(static_cast<int>(g));
    }
  }

  // Work on copies so that a numeric failure leaves `states` untouched.
  std::vector<PlayerState> working(n);
  std::vector<char> newcomer(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto it = states.find(*ids[i]);
    if (it == states.end()) {
      working[i] = new_player(params);
      newcomer[i] = 1;
    } else {
      working[i] = it->second;
    }
  }

  const DriftParams drift{params.gamma, params.effective_rho()};
  parallel_for(n, threads, [&](std::size_t i) {
    if (params.variant == Variant::kRho) {
      diffuse(working[i], drift);
    } else {
      diffuse_gaussian(working[i], params.gamma);
    }
  });

  std::vector<RoundEntry> entries(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sigma = working[i].sigma;
    entries[i] = {*ids[i], working[i].mu, std::sqrt(sigma * sigma + beta * beta), groups[i]};
  }
  const RoundView view(std::move(entries));
  const OpponentSampler sampler(view, params.subsample_cap, params.subsample_mode);
  const PerformanceModel model = params.performance_model();

  std::vector<double> performance(n);
  parallel_for(n, threads, [&](std::size_t i) {
    if (sampler.is_full_field()) {
      performance[i] = estimate_performance(i, view, model, params.tol, params.tie_weights);
    } else {
      const auto opponents = sampler.opponents_of(i);
      performance[i] =
          estimate_performance(i, view, model, params.tol, params.tie_weights, opponents);
    }
  });

  RoundReport report;
  report.contest_id = contest.id;
  report.index = contest.index;
  report.beta = beta;
  report.results.resize(n);
  parallel_for(n, threads, [&](std::size_t i) {
    PlayerState& state = working[i];
    auto& row = report.results[i];
    row.player_id = *ids[i];
    row.tie_group = groups[i];
    row.newcomer = newcomer[i] != 0;
    row.prior_rating = state.mu;
    row.prior_sigma = state.sigma;
    row.performance = performance[i];

    update_belief(state, performance[i], beta, params.variant, params.tol);
    if (params.variant == Variant::kRho && state.factors.size() > params.history_cap) {
      compress_history(state, params.history_cap);
      state.mu = solve_rating(state, params.tol);
    }
    state.last_update_round = contest.index;
    row.new_rating = state.mu;
    row.new_sigma = state.sigma;
  });

  for (std::size_t i = 0; i < n; ++i) states[*ids[i]] = std::move(working[i]);
  return report;
}

std::vector<RatingSummary> rating_summary(const PlayerMap& states) {
  std::vector<RatingSummary> out;
  out.reserve(states.size());
  for (const auto& [id, state] : states) {
    out.push_back({id, state.mu, state.sigma, state.contest_count});
  }
  std::sort(out.begin(), out.end(), [](const RatingSummary& a, const RatingSummary& b) {
    if (a.mu != b.mu) return a.mu > b.mu;
    return a.player_id < b.player_id;
  });
  return out;
}

RatingSystem::RatingSystem(SystemParams params, std::size_t threads)
    : params_(std::move(params)), threads_(threads == 0 ? 1 : threads) {
  params_.validate();
}

RoundReport RatingSystem::process_round(const ContestStandings& contest) {
  return elommr::process_round(players_, contest, params_, threads_);
}

}  // namespace elommr
