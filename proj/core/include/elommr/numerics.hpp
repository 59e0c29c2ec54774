#pragma once

// Root finding for strictly monotone scalar functions. Both update phases of
// the rating engine reduce to locating the single sign change of such a
// function, so everything here is templated on the callable to let the
// compiler inline the (hot) objective.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "elommr/error.hpp"

namespace elommr {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr int kMaxSolverIterations = 200;
inline constexpr int kMaxBracketDoublings = 60;

// tanh through a single exp; absolute error within 3e-16 and exactly odd.
inline double fast_tanh(double x) {
  const double e = std::exp(-2.0 * std::abs(x));
  return std::copysign((1.0 - e) / (1.0 + e), x);
}

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

struct SolveStats {
  int iterations = 0;
  int evaluations = 0;
};

namespace detail {

inline double checked(double value, double x) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::kNumericDomain,
                "objective is not finite at x=" + std::to_string(x));
  }
  return value;
}

inline bool opposite_or_zero(double a, double b) {
  return a == 0.0 || b == 0.0 || std::signbit(a) != std::signbit(b);
}

inline void require_valid(const Bracket& b, double tol) {
  if (!(b.lo < b.hi) || !std::isfinite(b.lo) || !std::isfinite(b.hi)) {
    throw Error(ErrorKind::kBracketFailure, "bracket must satisfy lo < hi");
  }
  if (!(tol > 0.0)) {
    throw Error(ErrorKind::kNumericDomain, "tolerance must be positive");
  }
}

[[noreturn]] inline void throw_no_sign_change(const Bracket& b) {
  throw Error(ErrorKind::kBracketFailure,
              "no sign change on [" + std::to_string(b.lo) + ", " +
                  std::to_string(b.hi) + "]");
}

}  // namespace detail

// Illinois variant of regula falsi, falling back to a bisection step whenever
// two consecutive iterations fail to halve the bracket. Returns x with
// |x - zero| <= tol.
template <class F>
double solve_monotone_zero(F&& f, Bracket bracket, double tol = kDefaultTolerance,
                           SolveStats* stats = nullptr) {
  detail::require_valid(bracket, tol);
  double a = bracket.lo;
  double b = bracket.hi;
  double fa = detail::checked(f(a), a);
  double fb = detail::checked(f(b), b);
  int evaluations = 2;
  int iterations = 0;
  auto finish = [&](double x) {
    if (stats != nullptr) {
      stats->iterations = iterations;
      stats->evaluations = evaluations;
    }
    return x;
  };
  if (fa == 0.0) return finish(a);
  if (fb == 0.0) return finish(b);
  if (!detail::opposite_or_zero(fa, fb)) detail::throw_no_sign_change(bracket);

  int last_side = 0;  // -1: a moved last, +1: b moved last
  double width_two_ago = b - a;
  double width_one_ago = b - a;
  bool force_bisect = false;
  for (; iterations < kMaxSolverIterations; ++iterations) {
    const double mid = 0.5 * (a + b);
    if (b - a <= 2.0 * tol || mid <= a || mid >= b) return finish(mid);

    double c = force_bisect ? mid : (a * fb - b * fa) / (fb - fa);
    if (!(c > a && c < b)) c = mid;
    const bool bisected = (c == mid);

    const double fc = detail::checked(f(c), c);
    ++evaluations;
    if (fc == 0.0) {
      ++iterations;
      return finish(c);
    }
    if (std::signbit(fc) == std::signbit(fa)) {
      a = c;
      fa = fc;
      if (last_side == -1 && !bisected) fb *= 0.5;
      last_side = -1;
    } else {
      b = c;
      fb = fc;
      if (last_side == +1 && !bisected) fa *= 0.5;
      last_side = +1;
    }

    const double width = b - a;
    force_bisect = width > 0.5 * width_two_ago;
    width_two_ago = width_one_ago;
    width_one_ago = width;
  }
  return finish(0.5 * (a + b));
}

// Plain bisection; slow but trivially correct. Used as the reference method.
template <class F>
double bisect_monotone_zero(F&& f, Bracket bracket, double tol = kDefaultTolerance,
                            SolveStats* stats = nullptr,
                            int max_iterations = kMaxSolverIterations) {
  detail::require_valid(bracket, tol);
  double a = bracket.lo;
  double b = bracket.hi;
  double fa = detail::checked(f(a), a);
  const double fb = detail::checked(f(b), b);
  if (!detail::opposite_or_zero(fa, fb)) detail::throw_no_sign_change(bracket);
  int iterations = 0;
  int evaluations = 2;
  if (fa == 0.0) {
    b = a;
  } else if (fb == 0.0) {
    a = b;
  }
  while (iterations < max_iterations && b - a > 2.0 * tol) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = detail::checked(f(mid), mid);
    ++evaluations;
    ++iterations;
    if (fm == 0.0) {
      a = b = mid;
      break;
    }
    if (std::signbit(fm) == std::signbit(fa)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  if (stats != nullptr) {
    stats->iterations = iterations;
    stats->evaluations = evaluations;
  }
  return 0.5 * (a + b);
}

// Newton's method safeguarded by the bracket: any step that leaves the current
// bracket, or that fails to make progress, is replaced by bisection.
// `fdf(x)` returns {f(x), f'(x)}.
template <class FDF>
double newton_monotone_zero(FDF&& fdf, Bracket bracket, double tol = kDefaultTolerance,
                            SolveStats* stats = nullptr,
                            double start = std::numeric_limits<double>::quiet_NaN()) {
  detail::require_valid(bracket, tol);
  double a = bracket.lo;
  double b = bracket.hi;
  auto [fa, dfa] = fdf(a);
  auto [fb, dfb] = fdf(b);
  detail::checked(fa, a);
  detail::checked(fb, b);
  (void)dfa;
  (void)dfb;
  int evaluations = 2;
  int iterations = 0;
  auto finish = [&](double x) {
    if (stats != nullptr) {
      stats->iterations = iterations;
      stats->evaluations = evaluations;
    }
    return x;
  };
  if (fa == 0.0) return finish(a);
  if (fb == 0.0) return finish(b);
  if (!detail::opposite_or_zero(fa, fb)) detail::throw_no_sign_change(bracket);

  double x = start > a && start < b ? start : 0.5 * (a + b);
  double width_two_ago = b - a;
  double width_one_ago = b - a;
  double residual_two_ago = std::numeric_limits<double>::infinity();
  double residual_one_ago = std::numeric_limits<double>::infinity();
  for (; iterations < kMaxSolverIterations; ++iterations) {
    if (b - a <= 2.0 * tol) return finish(0.5 * (a + b));
    auto [fx, dfx] = fdf(x);
    detail::checked(fx, x);
    ++evaluations;
    if (fx == 0.0) return finish(x);
    if (std::signbit(fx) == std::signbit(fa)) {
      a = x;
      fa = fx;
    } else {
      b = x;
    }
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) return finish(mid);
    // Bisect when two iterations neither halved the bracket nor cut the
    // residual sixteenfold; one-sided Newton convergence keeps the bracket wide.
    const bool stalled =
        b - a > 0.5 * width_two_ago && std::abs(fx) > 0.0625 * residual_two_ago;
    width_two_ago = width_one_ago;
    width_one_ago = b - a;
    residual_two_ago = residual_one_ago;
    residual_one_ago = std::abs(fx);
    double next = (dfx != 0.0 && std::isfinite(dfx) && !stalled) ? x - fx / dfx : mid;
    if (!(next > a && next < b)) next = mid;
    if (std::abs(next - x) <= 0.5 * tol) {
      // A tiny step is only trusted once a probe one tolerance away confirms
      // the sign change; an inaccurate slope otherwise stalls short of the zero.
      const double probe = std::clamp(x == a ? x + tol : x - tol, a, b);
      const double fp = detail::checked(fdf(probe).first, probe);
      ++evaluations;
      if (detail::opposite_or_zero(fx, fp)) {
        ++iterations;
        return finish(0.5 * (x + probe));
      }
      if (x == a) {
        a = probe;
        fa = fp;
      } else {
        b = probe;
      }
      next = 0.5 * (a + b);
    }
    x = next;
  }
  return finish(0.5 * (a + b));
}

// Geometric search for a bracket around `seed`. The bracket slides towards the
// sign change with a doubling stride, so its width stays comparable to the
// last stride rather than growing without bound.
template <class F>
Bracket expand_bracket(F&& f, double seed, double step) {
  if (!(step > 0.0) || !std::isfinite(seed)) {
    throw Error(ErrorKind::kBracketFailure, "bracket step must be positive");
  }
  double lo = seed - step;
  double hi = seed + step;
  double flo = detail::checked(f(lo), lo);
  double fhi = detail::checked(f(hi), hi);
  for (int doublings = 0;; ++doublings) {
    if (detail::opposite_or_zero(flo, fhi)) return Bracket{lo, hi};
    if (doublings == kMaxBracketDoublings) {
      throw Error(ErrorKind::kBracketFailure,
                  "no sign change within " + std::to_string(kMaxBracketDoublings) +
                      " doublings of seed " + std::to_string(seed));
    }
    step *= 2.0;
    if (flo == fhi) {
      lo -= step;
      hi += step;
      flo = detail::checked(f(lo), lo);
      fhi = detail::checked(f(hi), hi);
      continue;
    }
    const bool increasing = flo < fhi;
    const bool positive = !std::signbit(flo);
    if (increasing == positive) {
      // Zero lies below lo.
      hi = lo;
      fhi = flo;
      lo -= step;
      flo = detail::checked(f(lo), lo);
    } else {
      lo = hi;
      flo = fhi;
      hi += step;
      fhi = detail::checked(f(hi), hi);
    }
  }
}

// Newton iteration from `seed` for a strictly monotone f with slope. Steps are
// taken until two iterates straddle the zero; if a step is unusable the stride
// falls back to doubling multiples of `step`. The final solve is the bracketed
// Newton above, so the result carries the same tolerance guarantee.
template <class FDF>
double newton_from_seed(FDF&& fdf, double seed, double step, double tol = kDefaultTolerance,
                        SolveStats* stats = nullptr) {
  if (!(step > 0.0) || !std::isfinite(seed)) {
    throw Error(ErrorKind::kBracketFailure, "bracket step must be positive");
  }
  double x = seed;
  auto [fx, dfx] = fdf(x);
  detail::checked(fx, x);
  if (fx == 0.0) return x;
  for (int k = 0; k < kMaxSolverIterations; ++k, step = std::min(2.0 * step, 1e300)) {
    double y;
    if (std::isfinite(dfx) && dfx != 0.0) {
      const double newton = -fx / dfx;
      if (std::abs(newton) <= 0.5 * tol) {
        // Converging from one side: close the bracket just past the estimate.
        const double probe = x + std::copysign(tol, newton);
        const double fp = detail::checked(fdf(probe).first, probe);
        if (detail::opposite_or_zero(fx, fp)) return 0.5 * (x + probe);
      }
      // Bound the move so a near-flat slope cannot jump past the stride.
      y = x + std::clamp(newton, -step, step);
    } else {
      // Without slope information probe both sides.
      const double lo = x - step;
      const double hi = x + step;
      const double flo = detail::checked(fdf(lo).first, lo);
      const double fhi = detail::checked(fdf(hi).first, hi);
      if (detail::opposite_or_zero(flo, fx)) {
        return newton_monotone_zero(fdf, Bracket{lo, x}, tol, stats);
      }
      if (detail::opposite_or_zero(fx, fhi)) {
        return newton_monotone_zero(fdf, Bracket{x, hi}, tol, stats);
      }
      // Flat on both sides: widen the probe before choosing a direction.
      if (flo == fhi) continue;
      y = (fhi > flo) == (fx > 0.0) ? lo : hi;
    }
    const auto [fy, dfy] = fdf(y);
    detail::checked(fy, y);
    if (fy == 0.0) return y;
    if (detail::opposite_or_zero(fx, fy)) {
      if (std::abs(y - x) <= 2.0 * tol) return 0.5 * (x + y);
      const Bracket bracket = x < y ? Bracket{x, y} : Bracket{y, x};
      const double next = std::isfinite(dfy) && dfy != 0.0 ? y - fy / dfy : y;
      return newton_monotone_zero(fdf, bracket, tol, stats, next);
    }
    x = y;
    fx = fy;
    dfx = dfy;
  }
  throw Error(ErrorKind::kBracketFailure,
              "no sign change within " + std::to_string(kMaxSolverIterations) +
                  " steps from seed " + std::to_string(seed));
}

}  // namespace elommr
