#include "elommr/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "json.hpp"

#include "elommr/error.hpp"
#include "elommr/parallel.hpp"
#include "elommr/system.hpp"
#include "text_format.hpp"

namespace elommr {

namespace {

// Predicted order: rating descending, ties by id ascending.
bool predicted_before(const RoundPrediction& a, const RoundPrediction& b) {
  if (a.prior_rating != b.prior_rating) return a.prior_rating > b.prior_rating;
  return a.player_id < b.player_id;
}

// First position and size of every tie group; groups are numbered 0..G-1.
struct GroupSpans {
  std::vector<std::size_t> start;
  std::vector<std::size_t> size;
};

GroupSpans group_spans(std::span<const RoundPrediction> round) {
  int max_group = -1;
  for (const auto& r : round) max_group = std::max(max_group, r.tie_group);
  GroupSpans spans;
  spans.size.assign(static_cast<std::size_t>(max_group + 1), 0);
  for (const auto& r : round) {
    if (r.tie_group < 0) throw Error(ErrorKind::kValidation, "negative tie group");
    ++spans.size[static_cast<std::size_t>(r.tie_group)];
  }
  spans.start.assign(spans.size.size(), 0);
  for (std::size_t g = 1; g < spans.size.size(); ++g) {
    spans.start[g] = spans.start[g - 1] + spans.size[g - 1];
  }
  return spans;
}

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
  void add(std::size_t i) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  }
  // Count of entries with index <= i.
  std::size_t prefix(std::size_t i) const {
    std::size_t sum = 0;
    for (++i; i > 0; i -= i & (~i + 1)) sum += tree_[i];
    return sum;
  }

 private:
  std::vector<std::size_t> tree_;
};

double aggregate_mean(double sum, std::size_t count) {
  return count == 0 ? kUndefinedMetric : sum / static_cast<double>(count);
}

std::string format_one_decimal(double value) {
  if (std::isnan(value)) return "-";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", value);
  return buf;
}

}  // namespace

std::optional<double> pair_inversion(std::size_t i, std::span<const RoundPrediction> round) {
  const std::size_t n = round.size();
  if (n < 2) return std::nullopt;
  const auto& me = round[i];
  std::size_t correct = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const auto& other = round[j];
    if (me.prior_rating == other.prior_rating) {
      ++correct;
    } else if (me.prior_rating > other.prior_rating) {
      correct += me.tie_group <= other.tie_group;
    } else {
      correct += other.tie_group <= me.tie_group;
    }
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(n - 1);
}

std::optional<double> rank_deviation(std::size_t i, std::span<const RoundPrediction> round) {
  const std::size_t n = round.size();
  if (n < 2) return std::nullopt;
  const auto& me = round[i];
  std::size_t predicted = 0;
  std::size_t first = 0;
  std::size_t same = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != i && predicted_before(round[j], me)) ++predicted;
    if (round[j].tie_group < me.tie_group) ++first;
    if (round[j].tie_group == me.tie_group) ++same;
  }
  const std::size_t actual = std::clamp(predicted, first, first + same - 1);
  const double gap = actual > predicted ? actual - predicted : predicted - actual;
  return 100.0 * gap / static_cast<double>(n - 1);
}

RoundMetrics round_metrics(std::span<const RoundPrediction> round) {
  RoundMetrics out;
  const std::size_t n = round.size();
  if (n < 2) return out;
  const GroupSpans spans = group_spans(round);
  const std::size_t num_groups = spans.size.size();
  const double denom = static_cast<double>(n - 1);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return predicted_before(round[a], round[b]);
  });

  // order[] runs from highest to lowest rating; blocks share a rating.
  std::vector<std::size_t> correct(n, 0);
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t k = 0; k < n;) {
    std::size_t end = k + 1;
    while (end < n && round[order[end]].prior_rating == round[order[k]].prior_rating) ++end;
    blocks.emplace_back(k, end);
    const std::size_t size = end - k;
    out.equal_rating_matchups += size * (size - 1);
    for (std::size_t m = k; m < end; ++m) correct[order[m]] += size - 1;
    k = end;
  }

  // Higher-rated opponents are right when they finished at or above us.
  Fenwick higher(num_groups);
  for (const auto& [begin, end] : blocks) {
    for (std::size_t m = begin; m < end; ++m) {
      const std::size_t i = order[m];
      correct[i] += higher.prefix(static_cast<std::size_t>(round[i].tie_group));
    }
    for (std::size_t m = begin; m < end; ++m) {
      higher.add(static_cast<std::size_t>(round[order[m]].tie_group));
    }
  }
  // Lower-rated opponents are right when they finished at or below us.
  Fenwick lower(num_groups);
  std::size_t inserted = 0;
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
    const auto [begin, end] = *it;
    for (std::size_t m = begin; m < end; ++m) {
      const std::size_t i = order[m];
      const auto g = static_cast<std::size_t>(round[i].tie_group);
      correct[i] += inserted - (g == 0 ? 0 : lower.prefix(g - 1));
    }
    for (std::size_t m = begin; m < end; ++m) {
      lower.add(static_cast<std::size_t>(round[order[m]].tie_group));
      ++inserted;
    }
  }

  out.pair_inversion.resize(n);
  out.rank_deviation.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.pair_inversion[i] = 100.0 * static_cast<double>(correct[i]) / denom;
  }
  for (std::size_t predicted = 0; predicted < n; ++predicted) {
    const std::size_t i = order[predicted];
    const auto g = static_cast<std::size_t>(round[i].tie_group);
    const std::size_t actual =
        std::clamp(predicted, spans.start[g], spans.start[g] + spans.size[g] - 1);
    const double gap = actual > predicted ? actual - predicted : predicted - actual;
    out.rank_deviation[i] = 100.0 * gap / denom;
  }
  return out;
}

ContestCounts lifetime_contest_counts(std::span<const ContestRecord> dataset) {
  ContestCounts counts;
  for (const auto& contest : dataset) {
    for (const auto& group : contest.groups) {
      for (const auto& id : group) ++counts[id];
    }
  }
  return counts;
}

MetricReport evaluate(std::span<const ContestRecord> dataset, const SystemParams& params,
                      const EvaluationOptions& options, const ContestCounts* counts) {
  params.validate();
  ContestCounts own;
  if (counts == nullptr) {
    own = lifetime_contest_counts(dataset);
    counts = &own;
  }

  MetricReport report;
  RatingSystem system(params, options.threads);
  double pair_sum = 0.0;
  double rank_sum = 0.0;
  std::vector<RoundPrediction> round;
  for (std::size_t t = 0; t < dataset.size(); ++t) {
    const RoundReport result = system.process_round(dataset[t]);
    if (t < options.score_from) continue;

    round.clear();
    round.reserve(result.results.size());
    for (const auto& r : result.results) {
      round.push_back({r.player_id, r.prior_rating, r.tie_group});
    }
    const RoundMetrics metrics = round_metrics(round);

    RoundMetricRow row;
    row.contest_id = result.contest_id;
    row.index = result.index;
    row.participants = round.size();
    double row_pair = 0.0;
    double row_rank = 0.0;
    for (std::size_t i = 0; i < metrics.pair_inversion.size(); ++i) {
      const auto it = counts->find(round[i].player_id);
      if (it == counts->end() || it->second < options.min_contests) continue;
      ++row.counted;
      row_pair += metrics.pair_inversion[i];
      row_rank += metrics.rank_deviation[i];
    }
    row.pair_inversion_pct = aggregate_mean(row_pair, row.counted);
    row.rank_deviation_pct = aggregate_mean(row_rank, row.counted);
    pair_sum += row_pair;
    rank_sum += row_rank;
    report.counted_participants += row.counted;
    report.equal_rating_matchups += metrics.equal_rating_matchups;
    report.rounds.push_back(std::move(row));
  }
  report.pair_inversion_pct = aggregate_mean(pair_sum, report.counted_participants);
  report.rank_deviation_pct = aggregate_mean(rank_sum, report.counted_participants);
  return report;
}

const char* to_string(MetricSelector selector) noexcept {
  return selector == MetricSelector::kPairInversion ? "pair" : "rank";
}

MetricSelector parse_metric_selector(const std::string& name) {
  if (name == "pair" || name == "pair-inversion") return MetricSelector::kPairInversion;
  if (name == "rank" || name == "rank-deviation") return MetricSelector::kRankDeviation;
  throw Error(ErrorKind::kValidation, "unknown metric '" + name + "' (expected pair or rank)");
}

ParamGrid ParamGrid::default_grid() {
  return {{100.0, 200.0, 400.0}, {20.0, 40.0, 80.0, 160.0}, {0.1, 1.0}, {250.0, 350.0, 500.0}};
}

std::vector<SystemParams> ParamGrid::lattice(const SystemParams& base) const {
  auto axis = [](std::vector<double> values, double fallback) {
    if (values.empty()) values.push_back(fallback);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
  };
  const auto betas = axis(beta, base.beta);
  const auto gammas = axis(gamma, base.gamma);
  const auto rhos = base.variant == Variant::kRho ? axis(rho, base.rho)
                                                   : std::vector<double>{base.rho};
  const auto sigmas = axis(sigma_newcomer, base.sigma_newcomer);

  std::vector<SystemParams> points;
  points.reserve(betas.size() * gammas.size() * rhos.size() * sigmas.size());
  for (const double b : betas) {
    for (const double g : gammas) {
      for (const double r : rhos) {
        for (const double s : sigmas) {
          SystemParams p = base;
          p.beta = b;
          p.gamma = g;
          p.rho = r;
          p.sigma_newcomer = s;
          p.validate();
          points.push_back(p);
        }
      }
    }
  }
  return points;
}

GridSearchResult grid_search(std::span<const ContestRecord> dataset, const SystemParams& base,
                             const ParamGrid& grid, MetricSelector selector,
                             const GridSearchOptions& options) {
  if (dataset.empty()) throw Error(ErrorKind::kValidation, "grid search needs at least one round");
  if (!(options.train_fraction > 0.0 && options.train_fraction <= 1.0)) {
    throw Error(ErrorKind::kValidation, "train fraction must be in (0, 1]");
  }
  GridSearchResult result;
  result.split_round = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(options.train_fraction * dataset.size())));
  result.split_round = std::min(result.split_round, dataset.size());
  const auto train = dataset.first(result.split_round);
  const ContestCounts counts = lifetime_contest_counts(dataset);

  const std::vector<SystemParams> points = grid.lattice(base);
  result.points.resize(points.size());
  EvaluationOptions serial = options.evaluation;
  serial.threads = 1;
  serial.score_from = 0;
  parallel_for(points.size(), options.evaluation.threads, [&](std::size_t k) {
    result.points[k] = {points[k], evaluate(train, points[k], serial, &counts)};
  });

  // Lower rank deviation and higher pair inversion are better; an undefined
  // score never wins. Points are already in lexicographic order, so a strict
  // comparison keeps the smallest tuple on ties.
  auto score = [&](const MetricReport& r) {
    if (!r.defined()) return -std::numeric_limits<double>::infinity();
    return selector == MetricSelector::kPairInversion ? r.pair_inversion_pct
                                                      : -r.rank_deviation_pct;
  };
  std::size_t best = 0;
  for (std::size_t k = 1; k < result.points.size(); ++k) {
    if (score(result.points[k].train) > score(result.points[best].train)) best = k;
  }
  result.best = result.points[best].params;
  result.train = result.points[best].train;

  EvaluationOptions test_options = options.evaluation;
  if (options.warm_test) {
    test_options.score_from = result.split_round;
    result.test = evaluate(dataset, result.best, test_options, &counts);
  } else {
    test_options.score_from = 0;
    result.test = evaluate(dataset.subspan(result.split_round), result.best, test_options, &counts);
  }
  return result;
}

void write_metric_table(std::ostream& out, const MetricReport& report) {
  out << "contest\tindex\tparticipants\tcounted\tpair_inversion_pct\trank_deviation_pct\n";
  for (const auto& row : report.rounds) {
    out << row.contest_id << '\t' << row.index << '\t' << row.participants << '\t'
        << row.counted << '\t' << format_one_decimal(row.pair_inversion_pct) << '\t'
        << format_one_decimal(row.rank_deviation_pct) << '\n';
  }
  std::size_t participants = 0;
  for (const auto& row : report.rounds) participants += row.participants;
  out << "all\t-\t" << participants << '\t' << report.counted_participants << '\t'
      << format_one_decimal(report.pair_inversion_pct) << '\t'
      << format_one_decimal(report.rank_deviation_pct) << '\n';
}

void write_metric_records(std::ostream& out, const MetricReport& report) {
  // NaN metrics serialise as null.
  for (const auto& row : report.rounds) {
    const nlohmann::ordered_json record{{"type", "round"},
                                        {"contest", row.contest_id},
                                        {"index", row.index},
                                        {"participants", row.participants},
                                        {"counted", row.counted},
                                        {"pair_inversion_pct", row.pair_inversion_pct},
                                        {"rank_deviation_pct", row.rank_deviation_pct}};
    out << record.dump() << '\n';
  }
  const nlohmann::ordered_json aggregate{{"type", "aggregate"},
                                         {"rounds", report.rounds.size()},
                                         {"counted", report.counted_participants},
                                         {"equal_rating_matchups", report.equal_rating_matchups},
                                         {"pair_inversion_pct", report.pair_inversion_pct},
                                         {"rank_deviation_pct", report.rank_deviation_pct}};
  out << aggregate.dump() << '\n';
}

}  // namespace elommr
