#include "elommr/player_state.hpp"

#include <cmath>

#include "elommr/error.hpp"

namespace elommr {

double PlayerState::total_weight() const {
  double total = gaussian_weight;
  for (const auto& factor : factors) total += factor.weight;
  return total;
}

void PlayerState::refresh_sigma() { sigma = 1.0 / std::sqrt(total_weight()); }

PlayerState new_player(double mu_newcomer, double sigma_newcomer) {
  if (!(sigma_newcomer > 0.0) || !std::isfinite(mu_newcomer)) {
    throw Error(ErrorKind::kValidation, "newcomer prior needs finite mu and sigma > 0");
  }
  PlayerState state;
  state.gaussian_center = mu_newcomer;
  state.gaussian_weight = 1.0 / (sigma_newcomer * sigma_newcomer);
  state.mu = mu_newcomer;
  state.sigma = sigma_newcomer;
  return state;
}

PlayerState new_player(const SystemParams& params) {
  return new_player(params.mu_newcomer, params.sigma_newcomer);
}

void push_performance(PlayerState& state, double performance, double beta) {
  if (!(beta > 0.0) || !std::isfinite(performance)) {
    throw Error(ErrorKind::kNumericDomain, "performance must be finite with beta > 0");
  }
  state.factors.push_back({performance, beta, 1.0 / (beta * beta)});
  ++state.contest_count;
  state.refresh_sigma();
}

void compress_history(PlayerState& state, std::size_t max_len) {
  if (max_len < 1) {
    throw Error(ErrorKind::kValidation, "history cap must be at least 1");
  }
  if (state.factors.size() <= max_len) return;
  const std::size_t excess = state.factors.size() - max_len;
  double weight = state.gaussian_weight;
  double center = state.gaussian_center;
  for (std::size_t k = 0; k < excess; ++k) {
    const auto& folded = state.factors[k];
    const double merged = weight + folded.weight;
    center = (weight * center + folded.weight * folded.center) / merged;
    weight = merged;
  }
  state.gaussian_center = center;
  state.gaussian_weight = weight;
  state.factors.erase(state.factors.begin(),
                      state.factors.begin() + static_cast<std::ptrdiff_t>(excess));
  state.refresh_sigma();
}

}  // namespace elommr
