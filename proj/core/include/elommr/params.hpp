#pragma once

#include <cstddef>
#include <limits>
#include <string>

#include "elommr/numerics.hpp"

namespace elommr {

// chi: Gaussian performance model, Gaussian-only state.
// rho: logistic performance model with the full factor history and
//      pseudodiffusion at transfer ratio `SystemParams::rho`.
// infinity: logistic performance model, history collapsed after every round.
enum class Variant { kChi, kRho, kInfinity };

enum class PerformanceModel { kGaussian, kLogistic };

enum class SubsampleMode { kPerPlayer, kGlobal };

// Weights applied to the loss and victory terms of a tied opponent. (1, 1)
// selects the exact draw term; (0.5, 0.5) splits a tie into half a win and half
// a loss.
struct TieWeights {
  double loss = 1.0;
  double victory = 1.0;

  bool is_exact_draw() const { return loss == 1.0 && victory == 1.0; }
  friend bool operator==(const TieWeights&, const TieWeights&) = default;
};

inline constexpr double kInfiniteRho = std::numeric_limits<double>::infinity();

struct SystemParams {
  Variant variant = Variant::kRho;
  double rho = 1.0;
  double beta = 200.0;
  double gamma = 80.0;
  double mu_newcomer = 1500.0;
  double sigma_newcomer = 350.0;
  double tol = kDefaultTolerance;
  std::size_t subsample_cap = 500;
  SubsampleMode subsample_mode = SubsampleMode::kPerPlayer;
  std::size_t history_cap = 500;
  TieWeights tie_weights;

  PerformanceModel performance_model() const {
    return variant == Variant::kChi ? PerformanceModel::kGaussian
                                    : PerformanceModel::kLogistic;
  }

  // Transfer ratio actually used by the pseudodiffusion.
  double effective_rho() const {
    return variant == Variant::kRho ? rho : kInfiniteRho;
  }

  // Throws Error(kValidation) describing the first violated constraint.
  void validate() const;

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

const char* to_string(Variant variant) noexcept;
// Accepts "chi", "mmr" / "rho", "mmr-inf" / "infinity".
Variant parse_variant(const std::string& name);

}  // namespace elommr
