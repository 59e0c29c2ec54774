#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "elommr/engine.hpp"
#include "elommr/numerics.hpp"
#include "elommr/synthetic.hpp"
#include "elommr/system.hpp"

namespace {

using namespace elommr;

SyntheticDataset field_of(std::size_t players, std::size_t rounds) {
  SyntheticConfig cfg;
  cfg.num_players = players;
  cfg.num_rounds = rounds;
  cfg.participation = 1.0;
  cfg.seed = 77;
  return generate_synthetic(cfg);
}

// One steady-state round after a short warm-up; range(0) participants,
// range(1) selects the variant.
void BM_Round(benchmark::State& st) {
  const auto data = field_of(static_cast<std::size_t>(st.range(0)), 4);
  SystemParams params;
  params.variant = static_cast<Variant>(st.range(1));
  RatingSystem warm(params);
  for (std::size_t t = 0; t + 1 < data.contests.size(); ++t) warm.process_round(data.contests[t]);
  for (auto _ : st) {
    st.PauseTiming();
    PlayerMap states = warm.players();
    st.ResumeTiming();
    benchmark::DoNotOptimize(process_round(states, data.contests.back(), params));
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_Round)
    ->ArgsProduct({{1000, 2000, 4000, 8000},
                   {static_cast<long>(Variant::kChi), static_cast<long>(Variant::kRho)}})
    ->Unit(benchmark::kMillisecond);

RoundView random_view(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> rating(1500.0, 300.0);
  std::vector<RoundEntry> entries;
  for (std::size_t k = 0; k < n; ++k) {
    entries.push_back({"p" + std::to_string(k), rating(rng), 250.0, static_cast<int>(k)});
  }
  return RoundView(std::move(entries));
}

// Phase one for a single player against range(0) opponents.
void BM_EstimatePerformance(benchmark::State& st) {
  const RoundView view = random_view(static_cast<std::size_t>(st.range(0)), 5);
  const std::size_t middle = view.size() / 2;
  for (auto _ : st) {
    benchmark::DoNotOptimize(estimate_performance(middle, view, PerformanceModel::kLogistic));
  }
}
BENCHMARK(BM_EstimatePerformance)->RangeMultiplier(4)->Range(16, 4096);

// Root finders on a logistic-sum objective shaped like phase one.
struct Objective {
  std::vector<double> centers;
  double operator()(double x) const {
    double sum = 0.0;
    for (const double c : centers) sum += std::tanh((c - x) / 200.0);
    return sum;
  }
  std::pair<double, double> with_slope(double x) const {
    double f = 0.0;
    double df = 0.0;
    for (const double c : centers) {
      const double t = std::tanh((c - x) / 200.0);
      f += t;
      df -= (1.0 - t * t) / 200.0;
    }
    return {f, df};
  }
};

Objective make_objective() {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> center(1500.0, 300.0);
  Objective obj;
  for (int k = 0; k < 500; ++k) obj.centers.push_back(center(rng));
  return obj;
}

void BM_SolveIllinois(benchmark::State& st) {
  const Objective obj = make_objective();
  for (auto _ : st) benchmark::DoNotOptimize(solve_monotone_zero(obj, {-5000.0, 8000.0}));
}
BENCHMARK(BM_SolveIllinois);

void BM_SolveNewton(benchmark::State& st) {
  const Objective obj = make_objective();
  auto fdf = [&](double x) { return obj.with_slope(x); };
  for (auto _ : st) benchmark::DoNotOptimize(newton_monotone_zero(fdf, {-5000.0, 8000.0}));
}
BENCHMARK(BM_SolveNewton);

void BM_SolveBisection(benchmark::State& st) {
  const Objective obj = make_objective();
  for (auto _ : st) benchmark::DoNotOptimize(bisect_monotone_zero(obj, {-5000.0, 8000.0}));
}
BENCHMARK(BM_SolveBisection);

}  // namespace

BENCHMARK_MAIN();
