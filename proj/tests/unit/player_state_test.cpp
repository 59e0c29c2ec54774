#include "elommr/player_state.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "elommr/drift.hpp"
#include "elommr/engine.hpp"

namespace elommr {
namespace {

TEST(NewPlayer, FromPrior) {
  const PlayerState s = new_player(1500.0, 350.0);
  EXPECT_EQ(s.gaussian_center, 1500.0);
  EXPECT_DOUBLE_EQ(s.gaussian_weight, 1.0 / (350.0 * 350.0));
  EXPECT_EQ(s.mu, 1500.0);
  EXPECT_EQ(s.sigma, 350.0);
  EXPECT_TRUE(s.is_gaussian_only());
}

TEST(NewPlayer, WeightIdentityAndCount) {
  SystemParams params;
  const PlayerState s = new_player(params);
  EXPECT_NEAR(1.0 / (s.sigma * s.sigma), s.total_weight(), 1e-20);
  EXPECT_EQ(s.contest_count, 0);
  EXPECT_EQ(s.last_update_round, -1);
}

TEST(NewPlayer, RejectsBadPrior) {
  EXPECT_THROW(new_player(1500.0, 0.0), Error);
  EXPECT_THROW(new_player(NAN, 300.0), Error);
}

TEST(PushPerformance, AddsPrecision) {
  PlayerState s = new_player(1500.0, 350.0);
  push_performance(s, 1550.0, 200.0);
  ASSERT_EQ(s.factors.size(), 1u);
  EXPECT_EQ(s.factors[0], (PerformanceFactor{1550.0, 200.0, 1.0 / 40000.0}));
  EXPECT_NEAR(1.0 / (s.sigma * s.sigma), 1.0 / (350.0 * 350.0) + 1.0 / (200.0 * 200.0), 1e-18);
  EXPECT_EQ(s.contest_count, 1);
}

TEST(PushPerformance, ChronologicalAndShrinking) {
  PlayerState s = new_player(1500.0, 350.0);
  double sigma = s.sigma;
  for (double p : {1400.0, 1700.0, 1600.0}) {
    push_performance(s, p, 180.0);
    EXPECT_LT(s.sigma, sigma);
    sigma = s.sigma;
  }
  ASSERT_EQ(s.factors.size(), 3u);
  EXPECT_EQ(s.factors[0].center, 1400.0);
  EXPECT_EQ(s.factors[1].center, 1700.0);
  EXPECT_EQ(s.factors[2].center, 1600.0);
  EXPECT_EQ(s.factors[2].multiplicity(), 1.0);
}

TEST(CompressHistory, HugeCapIsNoOp) {
  PlayerState s = new_player(1500.0, 350.0);
  push_performance(s, 1600.0, 200.0);
  const PlayerState before = s;
  compress_history(s, 1000000);
  EXPECT_EQ(s, before);
}

TEST(CompressHistory, EqualWeightMean) {
  PlayerState s;
  s.gaussian_center = 1500.0;
  s.gaussian_weight = 1.0;
  s.factors = {{1600.0, 1.0, 1.0}, {1700.0, 1.0, 1.0}};
  s.refresh_sigma();
  compress_history(s, 1);
  EXPECT_DOUBLE_EQ(s.gaussian_center, 1550.0);
  EXPECT_DOUBLE_EQ(s.gaussian_weight, 2.0);
  ASSERT_EQ(s.factors.size(), 1u);
  EXPECT_EQ(s.factors[0].center, 1700.0);
}

TEST(CompressHistory, PreservesSigma) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> perf(1000.0, 2000.0);
  PlayerState s = new_player(1500.0, 350.0);
  for (int k = 0; k < 40; ++k) push_performance(s, perf(rng), 150.0 + k);
  const double sigma = s.sigma;
  compress_history(s, 7);
  EXPECT_EQ(s.factors.size(), 7u);
  EXPECT_NEAR(s.sigma, sigma, 1e-12 * sigma);
  EXPECT_NEAR(1.0 / (s.sigma * s.sigma), s.total_weight(), 1e-15 * s.total_weight());
}

TEST(CompressHistory, RejectsZeroCap) {
  PlayerState s = new_player(1500.0, 350.0);
  EXPECT_THROW(compress_history(s, 0), Error);
}

// Largest rating shift from folding every factor whose multiplicity is below
// `threshold`, over random 120-round histories.
double worst_fold_shift(double threshold) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> perf(1500.0, 200.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    PlayerState s = new_player(1500.0, 350.0);
    for (int round = 0; round < 120; ++round) {
      diffuse(s, {80.0, 1.0});
      update_belief(s, perf(rng), 200.0, Variant::kRho);
    }
    std::size_t faded = 0;
    while (faded < s.factors.size() && s.factors[faded].multiplicity() < threshold) ++faded;
    EXPECT_GT(faded, 0u);
    PlayerState compressed = s;
    compress_history(compressed, s.factors.size() - faded);
    worst = std::max(worst, std::abs(solve_rating(compressed) - s.mu));
  }
  return worst;
}

TEST(CompressHistory, FaintFactorsBarelyMoveRating) {
  EXPECT_LT(worst_fold_shift(0.05), 0.1);
}

TEST(CompressHistory, NegligibleFactorsBarelyMoveRating) {
  EXPECT_LT(worst_fold_shift(1e-3), 0.1);
}

}  // namespace
}  // namespace elommr
