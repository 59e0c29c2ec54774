#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "elommr/contest.hpp"
#include "elommr/params.hpp"

namespace elommr {

// A participant as seen by the metrics: their prior rating and where they
// actually finished.
struct RoundPrediction {
  std::string player_id;
  double prior_rating = 0.0;
  int tie_group = 0;
};

// Percentage of opponents against whom the prediction was right. A matchup is
// right when the higher-rated player won or tied; equal ratings count as right.
// nullopt for a round with fewer than two participants.
std::optional<double> pair_inversion(std::size_t i, std::span<const RoundPrediction> round);

// |actual rank - predicted rank| / (n - 1) * 100. The predicted rank sorts by
// rating descending, ties by id; within a tied group the actual rank is the one
// closest to the prediction.
std::optional<double> rank_deviation(std::size_t i, std::span<const RoundPrediction> round);

struct RoundMetrics {
  std::vector<double> pair_inversion;
  std::vector<double> rank_deviation;
  std::size_t equal_rating_matchups = 0;  // ordered pairs (i, j) with equal ratings
};

// Both metrics for every participant in O(n log n). Empty vectors for rounds
// with fewer than two participants.
RoundMetrics round_metrics(std::span<const RoundPrediction> round);

inline constexpr double kUndefinedMetric = std::numeric_limits<double>::quiet_NaN();

struct RoundMetricRow {
  std::string contest_id;
  std::int64_t index = 0;
  std::size_t participants = 0;
  std::size_t counted = 0;
  double pair_inversion_pct = kUndefinedMetric;
  double rank_deviation_pct = kUndefinedMetric;
};

struct MetricReport {
  double pair_inversion_pct = kUndefinedMetric;
  double rank_deviation_pct = kUndefinedMetric;
  std::size_t counted_participants = 0;
  std::size_t equal_rating_matchups = 0;
  std::vector<RoundMetricRow> rounds;

  bool defined() const { return counted_participants > 0; }
};

using ContestCounts = std::unordered_map<std::string, std::size_t>;

ContestCounts lifetime_contest_counts(std::span<const ContestRecord> dataset);

struct EvaluationOptions {
  std::size_t min_contests = 5;
  std::size_t threads = 1;
  // Rounds before this position are rated but not scored.
  std::size_t score_from = 0;
};

// Runs the rating system over `dataset` and scores every round from the prior
// ratings the system held when the round began. Players with fewer than
// `min_contests` lifetime contests (counted over `counts`, or over `dataset`
// when null) are rated but not scored.
MetricReport evaluate(std::span<const ContestRecord> dataset, const SystemParams& params,
                      const EvaluationOptions& options = {},
                      const ContestCounts* counts = nullptr);

enum class MetricSelector { kPairInversion, kRankDeviation };

const char* to_string(MetricSelector selector) noexcept;
MetricSelector parse_metric_selector(const std::string& name);

// Axes of the hyperparameter lattice. An empty axis keeps the base value.
struct ParamGrid {
  std::vector<double> beta;
  std::vector<double> gamma;
  std::vector<double> rho;
  std::vector<double> sigma_newcomer;

  static ParamGrid default_grid();
  // Points in lexicographic (beta, gamma, rho, sigma_newcomer) order. The rho
  // axis is dropped for variants that do not use it.
  std::vector<SystemParams> lattice(const SystemParams& base) const;
};

struct GridSearchOptions {
  EvaluationOptions evaluation;
  double train_fraction = 0.1;
  // false: the test split is rated from scratch. true: the system runs over
  // the whole stream and only the test rounds are scored.
  bool warm_test = false;
};

struct GridPointResult {
  SystemParams params;
  MetricReport train;
};

struct GridSearchResult {
  SystemParams best;
  std::size_t split_round = 0;
  std::vector<GridPointResult> points;
  MetricReport train;
  MetricReport test;
};

// Tunes on the first `train_fraction` of rounds (at least one) and reports the
// winner on the rest. Ties go to the lexicographically smallest point.
GridSearchResult grid_search(std::span<const ContestRecord> dataset, const SystemParams& base,
                             const ParamGrid& grid, MetricSelector selector,
                             const GridSearchOptions& options = {});

// Tab-separated table: one row per round plus a final "all" row. Metrics are
// printed to one decimal.
void write_metric_table(std::ostream& out, const MetricReport& report);
// One JSON object per line: {"type":"round",...} rows then {"type":"aggregate",...}.
void write_metric_records(std::ostream& out, const MetricReport& report);

}  // namespace elommr
