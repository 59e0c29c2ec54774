#include "elommr/drift.hpp"

#include <cmath>

#include "elommr/error.hpp"

namespace elommr {

double decay_factor(double total_weight, double gamma) {
  return 1.0 / (1.0 + gamma * gamma * total_weight);
}

double transfer_retention(double kappa, double rho) {
  if (std::isinf(rho)) return kappa < 1.0 ? 0.0 : 1.0;
  return std::pow(kappa, rho);
}

void diffuse(PlayerState& state, const DriftParams& params) {
  if (!(params.gamma >= 0.0) || !(params.rho >= 0.0)) {
    throw Error(ErrorKind::kValidation, "drift needs gamma >= 0 and rho >= 0");
  }
  if (params.gamma == 0.0) {
    state.refresh_sigma();
    return;
  }
  const double total = state.total_weight();
  const double kappa = decay_factor(total, params.gamma);
  const double retained = transfer_retention(kappa, params.rho);

  // The transfer draws on all factors, the Gaussian one included; this is what
  // makes the total weight scale by exactly kappa.
  const double kept = retained * state.gaussian_weight;
  const double transferred = (1.0 - retained) * total;
  state.gaussian_center =
      (kept * state.gaussian_center + transferred * state.mu) / (kept + transferred);
  state.gaussian_weight = kappa * (kept + transferred);

  const double factor_decay = kappa * retained;
  for (auto& factor : state.factors) factor.weight *= factor_decay;
  state.refresh_sigma();
}

void diffuse_gaussian(PlayerState& state, double gamma) {
  if (!state.is_gaussian_only()) {
    throw Error(ErrorKind::kVariantMismatch,
                "Gaussian diffusion applied to a state with logistic factors");
  }
  if (!(gamma >= 0.0)) throw Error(ErrorKind::kValidation, "gamma must be >= 0");
  if (gamma == 0.0) return;
  const double variance = 1.0 / state.gaussian_weight + gamma * gamma;
  state.gaussian_weight = 1.0 / variance;
  state.refresh_sigma();
}

}  // namespace elommr
