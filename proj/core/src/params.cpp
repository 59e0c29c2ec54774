#include <cmath>
#include <string>

#include "elommr/error.hpp"
#include "elommr/params.hpp"

namespace elommr {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kBracketFailure: return "bracket failure";
    case ErrorKind::kNumericDomain: return "numeric domain";
    case ErrorKind::kVariantMismatch: return "variant mismatch";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kVersion: return "version";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

const char* to_string(Variant variant) noexcept {
  switch (variant) {
    case Variant::kChi: return "chi";
    case Variant::kRho: return "mmr";
    case Variant::kInfinity: return "mmr-inf";
  }
  return "unknown";
}

Variant parse_variant(const std::string& name) {
  if (name == "chi") return Variant::kChi;
  if (name == "mmr" || name == "rho") return Variant::kRho;
  if (name == "mmr-inf" || name == "infinity") return Variant::kInfinity;
  throw Error(ErrorKind::kValidation, "unknown variant '" + name + "'");
}

void SystemParams::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::kValidation, what); };
  if (variant == Variant::kRho && !(rho > 0.0 && std::isfinite(rho))) {
    fail("rho must be positive and finite for the mmr variant");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) fail("beta must be positive");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) fail("gamma must be non-negative");
  if (!std::isfinite(mu_newcomer)) fail("mu_newcomer must be finite");
  if (!(sigma_newcomer > 0.0) || !std::isfinite(sigma_newcomer)) {
    fail("sigma_newcomer must be positive");
  }
  if (!(tol > 0.0)) fail("tol must be positive");
  if (subsample_cap < 1) fail("subsample cap must be at least 1");
  if (history_cap < 1) fail("history cap must be at least 1");
  if (!(tie_weights.loss >= 0.0 && tie_weights.loss <= 1.0 && tie_weights.victory >= 0.0 &&
        tie_weights.victory <= 1.0 && std::abs(tie_weights.loss - tie_weights.victory) < 1.0)) {
    fail("tie weights must lie in [0, 1] and differ by less than 1");
  }
}

}  // namespace elommr
