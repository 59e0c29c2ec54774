#include "elommr/distributions.hpp"

#include <cmath>

namespace elommr {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;  // 1 / sqrt(2 pi)
constexpr double kTailSwitch = -6.0;
constexpr int kContinuedFractionTerms = 64;

double standard_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double standard_cdf(double z) {
  return 0.5 * std::erfc(-z * (std::numbers::sqrt2 / 2.0));
}

}  // namespace

double logistic_cdf(double x, const LogisticSpec& spec) {
  return 1.0 / (1.0 + std::exp(-(x - spec.mu) / spec.scale_bar));
}

double logistic_pdf(double x, const LogisticSpec& spec) {
  const double sech = 1.0 / std::cosh(0.5 * (x - spec.mu) / spec.scale_bar);
  return 0.25 * sech * sech / spec.scale_bar;
}

Ldv ldv_logistic(double x, const LogisticSpec& spec) {
  const double z = (x - spec.mu) / spec.scale_bar;
  const double cdf = 1.0 / (1.0 + std::exp(-z));
  const double survival = 1.0 / (1.0 + std::exp(z));
  return Ldv{
      .l = -cdf / spec.scale_bar,
      .d = -std::tanh(0.5 * z) / spec.scale_bar,
      .v = survival / spec.scale_bar,
  };
}

double gaussian_cdf(double x, const GaussianSpec& spec) {
  return standard_cdf((x - spec.mu) / spec.sigma);
}

double gaussian_pdf(double x, const GaussianSpec& spec) {
  return standard_pdf((x - spec.mu) / spec.sigma) / spec.sigma;
}

double inverse_mills_ratio(double z) {
  if (z >= kTailSwitch) return standard_pdf(z) / standard_cdf(z);
  // Lower tail: Phi(z) / phi(z) = 1 / (t + 1/(t + 2/(t + 3/(t + ...)))), t = -z.
  const double t = -z;
  double r = t;
  for (int k = kContinuedFractionTerms; k >= 1; --k) r = t + k / r;
  return r;
}

Ldv ldv_gaussian(double x, const GaussianSpec& spec) {
  const double z = (x - spec.mu) / spec.sigma;
  return Ldv{
      .l = -inverse_mills_ratio(-z) / spec.sigma,
      .d = -z / spec.sigma,
      .v = inverse_mills_ratio(z) / spec.sigma,
  };
}

}  // namespace elommr
