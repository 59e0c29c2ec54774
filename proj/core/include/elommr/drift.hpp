#pragma once

#include "elommr/player_state.hpp"

namespace elommr {

struct DriftParams {
  double gamma = 0.0;  // skill increment stddev per participated round
  double rho = 1.0;    // transfer rate relative to decay; kInfiniteRho allowed
};

// Decay factor kappa = (1 + gamma^2 / sigma^2)^-1 for a posterior of the given
// total weight (1 / sigma^2).
double decay_factor(double total_weight, double gamma);

// kappa^rho with kappa^inf taken as 0 for kappa < 1 and 1 for kappa = 1.
double transfer_retention(double kappa, double rho);

// Pseudodiffusion: every factor decays by kappa, and a kappa^rho-complement of
// the total weight is transferred onto the Gaussian factor centred at the
// current rating. The rating is preserved and sigma^2 grows by gamma^2.
void diffuse(PlayerState& state, const DriftParams& params);

// Exact Gaussian diffusion: sigma^2 += gamma^2. Requires a Gaussian-only state
// and throws Error(kVariantMismatch) otherwise.
void diffuse_gaussian(PlayerState& state, double gamma);

}  // namespace elommr
