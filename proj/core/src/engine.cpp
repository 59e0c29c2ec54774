#include "elommr/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "elommr/distributions.hpp"
#include "elommr/error.hpp"
#include "elommr/numerics.hpp"

namespace elommr {

RoundView::RoundView(std::vector<RoundEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    const int previous = i == 0 ? 0 : entries_[i - 1].tie_group;
    if (e.tie_group < previous || e.tie_group > previous + 1 || (i == 0 && e.tie_group != 0)) {
      throw Error(ErrorKind::kValidation, "tie groups must be contiguous from 0");
    }
    if (!(e.delta > 0.0) || !std::isfinite(e.prior_rating)) {
      throw Error(ErrorKind::kValidation, "round entry for '" + e.player_id +
                                              "' needs a finite rating and delta > 0");
    }
  }

  rating_order_.resize(entries_.size());
  std::iota(rating_order_.begin(), rating_order_.end(), std::size_t{0});
  std::sort(rating_order_.begin(), rating_order_.end(), [this](std::size_t a, std::size_t b) {
    const auto& ea = entries_[a];
    const auto& eb = entries_[b];
    if (ea.prior_rating != eb.prior_rating) return ea.prior_rating < eb.prior_rating;
    return ea.player_id < eb.player_id;
  });
  rating_position_.resize(entries_.size());
  for (std::size_t pos = 0; pos < rating_order_.size(); ++pos) {
    rating_position_[rating_order_[pos]] = pos;
  }
}

EvidenceSplit split_evidence(std::size_t i, const RoundView& view) {
  EvidenceSplit split;
  const int group = view[i].tie_group;
  for (std::size_t j = 0; j < view.size(); ++j) {
    const int other = view[j].tie_group;
    if (other < group) {
      split.losers_to.push_back(j);
    } else if (other > group) {
      split.winners_over.push_back(j);
    } else {
      split.tied_with.push_back(j);
    }
  }
  return split;
}

namespace {

// Coefficients (alpha, beta) of a term (alpha - beta * F_j(x)) / scale_bar_j in
// the logistic objective: loss = -F / s, win = (1 - F) / s and a tie is
// w_loss * loss + w_victory * win.
struct TermShape {
  double alpha;
  double beta;
};

TermShape term_shape(int opponent_group, int own_group, const TieWeights& ties) {
  if (opponent_group < own_group) return {0.0, 1.0};
  if (opponent_group > own_group) return {1.0, 1.0};
  return {ties.victory, ties.loss + ties.victory};
}

struct TanhTerm {
  double center;
  double half_inv_scale;
  double coef;
};

template <class Visit>
void for_each_term(std::size_t i, const RoundView& view,
                   std::span<const std::size_t> opponents, Visit&& visit) {
  if (opponents.empty()) {
    for (std::size_t j = 0; j < view.size(); ++j) visit(j);
    return;
  }
  visit(i);
  for (const std::size_t j : opponents) {
    if (j != i) visit(j);
  }
}

double estimate_logistic(std::size_t i, const RoundView& view, double tol,
                         const TieWeights& ties, std::span<const std::size_t> opponents) {
  const int own_group = view[i].tie_group;
  std::vector<TanhTerm> terms;
  terms.reserve(opponents.empty() ? view.size() : opponents.size() + 1);
  double constant = 0.0;
  for_each_term(i, view, opponents, [&](std::size_t j) {
    const auto& e = view[j];
    const double scale_bar = logistic_scale_from_stddev(e.delta);
    const auto shape = term_shape(e.tie_group, own_group, ties);
    // F = (1 + tanh(u)) / 2 with u = (x - mu) / (2 scale_bar).
    constant += (shape.alpha - 0.5 * shape.beta) / scale_bar;
    terms.push_back({e.prior_rating, 0.5 / scale_bar, -0.5 * shape.beta / scale_bar});
  });
  auto with_slope = [&](double x) {
    double sum = constant;
    double slope = 0.0;
    for (const auto& t : terms) {
      const double th = fast_tanh((x - t.center) * t.half_inv_scale);
      sum += t.coef * th;
      slope += t.coef * t.half_inv_scale * (1.0 - th * th);
    }
    return std::pair{sum, slope};
  };
  return newton_from_seed(with_slope, view[i].prior_rating, view[i].delta, tol);
}

double estimate_gaussian(std::size_t i, const RoundView& view, double tol,
                         const TieWeights& ties, std::span<const std::size_t> opponents) {
  const int own_group = view[i].tie_group;
  struct Term {
    GaussianSpec spec;
    double loss;
    double victory;
    bool draw;
  };
  std::vector<Term> terms;
  terms.reserve(opponents.empty() ? view.size() : opponents.size() + 1);
  const bool exact_draw = ties.is_exact_draw();
  for_each_term(i, view, opponents, [&](std::size_t j) {
    const auto& e = view[j];
    const GaussianSpec spec{e.prior_rating, e.delta};
    if (e.tie_group < own_group) {
      terms.push_back({spec, 1.0, 0.0, false});
    } else if (e.tie_group > own_group) {
      terms.push_back({spec, 0.0, 1.0, false});
    } else {
      terms.push_back({spec, ties.loss, ties.victory, exact_draw});
    }
  });
  // With z = (x - mu) / sigma: l' = -l (z + sigma l) / sigma,
  // v' = -v (z + sigma v) / sigma and d' = -1 / sigma^2.
  auto with_slope = [&](double x) {
    double sum = 0.0;
    double slope = 0.0;
    for (const auto& t : terms) {
      const double sigma = t.spec.sigma;
      const double z = (x - t.spec.mu) / sigma;
      if (t.draw) {
        sum -= z / sigma;
        slope -= 1.0 / (sigma * sigma);
        continue;
      }
      if (t.loss != 0.0) {
        const double l = -inverse_mills_ratio(-z) / sigma;
        sum += t.loss * l;
        slope -= t.loss * l * (z + sigma * l) / sigma;
      }
      if (t.victory != 0.0) {
        const double v = inverse_mills_ratio(z) / sigma;
        sum += t.victory * v;
        slope -= t.victory * v * (z + sigma * v) / sigma;
      }
    }
    return std::pair{sum, slope};
  };
  return newton_from_seed(with_slope, view[i].prior_rating, view[i].delta, tol);
}

}  // namespace

double estimate_performance(std::size_t i, const RoundView& view, PerformanceModel model,
                            double tol, const TieWeights& ties,
                            std::span<const std::size_t> opponents) {
  if (i >= view.size()) {
    throw Error(ErrorKind::kValidation, "player index outside the round");
  }
  return model == PerformanceModel::kLogistic
             ? estimate_logistic(i, view, tol, ties, opponents)
             : estimate_gaussian(i, view, tol, ties, opponents);
}

OpponentSampler::OpponentSampler(const RoundView& view, std::size_t cap, SubsampleMode mode)
    : view_(&view), cap_(cap), mode_(mode), full_field_(cap + 1 >= view.size()) {
  if (cap < 1) throw Error(ErrorKind::kValidation, "subsample cap must be at least 1");
  if (full_field_ || mode_ != SubsampleMode::kGlobal) return;

  // Window of cap - 2 players around the median of the rating order, plus the
  // first and last finishers so that every player keeps both a better- and a
  // worse-ranked opponent.
  const auto order = view.rating_order();
  const std::size_t n = view.size();
  const std::size_t window = cap >= 3 ? cap - 2 : cap;
  const std::size_t start = std::min(n - window, n / 2 - std::min(n / 2, window / 2));
  shared_.assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                 order.begin() + static_cast<std::ptrdiff_t>(start + window));
  if (cap >= 3) {
    shared_.push_back(0);
    shared_.push_back(n - 1);
  }
  std::sort(shared_.begin(), shared_.end());
  shared_.erase(std::unique(shared_.begin(), shared_.end()), shared_.end());
}

std::vector<std::size_t> OpponentSampler::opponents_of(std::size_t i) const {
  std::vector<std::size_t> out;
  if (full_field_) {
    out.reserve(view_->size());
    for (std::size_t j = 0; j < view_->size(); ++j) {
      if (j != i) out.push_back(j);
    }
    return out;
  }
  if (mode_ == SubsampleMode::kGlobal) {
    out.reserve(shared_.size());
    for (const std::size_t j : shared_) {
      if (j != i) out.push_back(j);
    }
    return out;
  }
  out = nearest_to(i);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> OpponentSampler::nearest_to(std::size_t i) const {
  const RoundView& view = *view_;
  const auto order = view.rating_order();
  const double own = view[i].prior_rating;
  const std::size_t pos = view.rating_position(i);

  // Returns true when a is strictly preferable to b (closer rating, then id).
  auto closer = [&](std::size_t a, std::size_t b) {
    const double da = std::abs(view[a].prior_rating - own);
    const double db = std::abs(view[b].prior_rating - own);
    if (da != db) return da < db;
    return view[a].player_id < view[b].player_id;
  };

  // Selection order is non-decreasing in distance.
  std::vector<std::size_t> picked;
  picked.reserve(cap_ + 2);
  std::size_t left = pos;       // next candidate is order[left - 1]
  std::size_t right = pos + 1;  // next candidate is order[right]
  while (picked.size() < cap_ && (left > 0 || right < order.size())) {
    if (left == 0) {
      picked.push_back(order[right++]);
    } else if (right == order.size()) {
      picked.push_back(order[--left]);
    } else if (closer(order[left - 1], order[right])) {
      picked.push_back(order[--left]);
    } else {
      picked.push_back(order[right++]);
    }
  }

  const int group = view[i].tie_group;
  auto better = [&](std::size_t j) { return view[j].tie_group < group; };
  auto worse = [&](std::size_t j) { return view[j].tie_group > group; };

  auto ensure_side = [&](auto&& on_side, auto&& on_other_side) {
    if (std::any_of(picked.begin(), picked.end(), on_side)) return;
    std::size_t best = view.size();
    for (std::size_t j = 0; j < view.size(); ++j) {
      if (j == i || !on_side(j)) continue;
      if (best == view.size() || closer(j, best)) best = j;
    }
    if (best == view.size()) return;
    if (picked.size() < cap_) {
      picked.push_back(best);
      return;
    }
    const auto other_count = std::count_if(picked.begin(), picked.end(), on_other_side);
    for (std::size_t k = picked.size(); k-- > 0;) {
      if (!on_other_side(picked[k]) || other_count > 1) {
        picked[k] = best;
        return;
      }
    }
    picked.push_back(best);
  };
  ensure_side(better, worse);
  ensure_side(worse, better);
  return picked;
}

std::vector<std::size_t> subsample_opponents(std::size_t i, const RoundView& view,
                                             std::size_t cap, SubsampleMode mode) {
  return OpponentSampler(view, cap, mode).opponents_of(i);
}

double solve_rating(const PlayerState& state, double tol) {
  struct Term {
    double center;
    double half_inv_scale;
    double coef;
  };
  std::vector<Term> terms;
  terms.reserve(state.factors.size());
  double lo = state.gaussian_center;
  double hi = state.gaussian_center;
  for (const auto& f : state.factors) {
    const double scale_bar = logistic_scale_from_stddev(f.beta);
    terms.push_back({f.center, 0.5 / scale_bar, f.multiplicity() / scale_bar});
    lo = std::min(lo, f.center);
    hi = std::max(hi, f.center);
  }
  if (!(lo < hi)) return lo;
  const double w0 = state.gaussian_weight;
  const double p0 = state.gaussian_center;
  auto objective = [&](double s) {
    double sum = w0 * (s - p0);
    for (const auto& t : terms) sum += t.coef * fast_tanh((s - t.center) * t.half_inv_scale);
    return sum;
  };
  // Every term is non-positive at the smallest centre and non-negative at the
  // largest, so the zero is inside [lo, hi].
  return solve_monotone_zero(objective, Bracket{lo, hi}, tol);
}

void update_belief(PlayerState& state, double performance, double beta, Variant variant,
                   double tol) {
  if (!std::isfinite(performance) || !(beta > 0.0)) {
    throw Error(ErrorKind::kNumericDomain, "performance must be finite with beta > 0");
  }
  switch (variant) {
    case Variant::kChi: {
      if (!state.is_gaussian_only()) {
        throw Error(ErrorKind::kVariantMismatch, "chi update on a state with history");
      }
      const double w_new = 1.0 / (beta * beta);
      const double merged = state.gaussian_weight + w_new;
      state.gaussian_center =
          (state.gaussian_weight * state.gaussian_center + w_new * performance) / merged;
      state.gaussian_weight = merged;
      state.mu = state.gaussian_center;
      ++state.contest_count;
      state.refresh_sigma();
      return;
    }
    case Variant::kRho:
      push_performance(state, performance, beta);
      state.mu = solve_rating(state, tol);
      return;
    case Variant::kInfinity: {
      if (!state.is_gaussian_only()) {
        throw Error(ErrorKind::kVariantMismatch, "infinity update on a state with history");
      }
      push_performance(state, performance, beta);
      state.mu = solve_rating(state, tol);
      state.gaussian_center = state.mu;
      state.gaussian_weight = state.total_weight();
      state.factors.clear();
      state.refresh_sigma();
      return;
    }
  }
}

std::vector<AverageWeight> robust_average_weights(const PlayerState& state) {
  std::vector<AverageWeight> out;
  out.reserve(state.factors.size() + 1);
  out.push_back({0, state.gaussian_center, state.gaussian_weight});
  for (std::size_t k = 0; k < state.factors.size(); ++k) {
    const auto& f = state.factors[k];
    const double scale_bar = logistic_scale_from_stddev(f.beta);
    const double gap = state.mu - f.center;
    const double u = 0.5 * gap / scale_bar;
    // tanh(u) / u -> 1 as u -> 0; the series keeps the limit smooth.
    const double ratio = std::abs(u) < 1e-6 ? 1.0 - u * u / 3.0 : fast_tanh(u) / u;
    const double weight = f.multiplicity() * ratio / (2.0 * scale_bar * scale_bar);
    out.push_back({k + 1, f.center, weight});
  }
  return out;
}

}  // namespace elommr
