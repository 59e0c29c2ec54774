#pragma once

#include <numbers>

namespace elommr {

// Ratio between the natural scale of a logistic distribution and its standard
// deviation: scale_bar = kLogisticScalePerStddev * stddev.
inline constexpr double kLogisticScalePerStddev = std::numbers::sqrt3 / std::numbers::pi;

// The only place stddev <-> logistic natural scale conversions happen.
constexpr double logistic_scale_from_stddev(double stddev) {
  return kLogisticScalePerStddev * stddev;
}
constexpr double stddev_from_logistic_scale(double scale_bar) {
  return scale_bar / kLogisticScalePerStddev;
}

struct LogisticSpec {
  double mu = 0.0;
  double scale_bar = 1.0;  // natural scale; variance is (pi^2 / 3) * scale_bar^2

  static LogisticSpec from_stddev(double mu, double stddev) {
    return {mu, logistic_scale_from_stddev(stddev)};
  }
};

struct GaussianSpec {
  double mu = 0.0;
  double sigma = 1.0;
};

// Logarithmic derivatives of the survival function (l), density (d) and CDF (v).
struct Ldv {
  double l = 0.0;
  double d = 0.0;
  double v = 0.0;
};

double logistic_cdf(double x, const LogisticSpec& spec);
double logistic_pdf(double x, const LogisticSpec& spec);
Ldv ldv_logistic(double x, const LogisticSpec& spec);

double gaussian_cdf(double x, const GaussianSpec& spec);
double gaussian_pdf(double x, const GaussianSpec& spec);
Ldv ldv_gaussian(double x, const GaussianSpec& spec);

// phi(z) / Phi(z) for the standard normal, accurate far into the lower tail.
double inverse_mills_ratio(double z);

}  // namespace elommr
