#include "elommr/drift.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "elommr/engine.hpp"
#include "elommr/error.hpp"

namespace elommr {
namespace {

PlayerState random_history(std::mt19937_64& rng, int rounds) {
  std::normal_distribution<double> perf(1500.0, 300.0);
  std::uniform_real_distribution<double> beta(100.0, 300.0);
  PlayerState s = new_player(1500.0, 350.0);
  for (int k = 0; k < rounds; ++k) {
    diffuse(s, {60.0, 1.0});
    update_belief(s, perf(rng), beta(rng), Variant::kRho);
  }
  return s;
}

TEST(DecayFactor, CorrectMagnitude) {
  PlayerState s = new_player(1500.0, 80.0);
  EXPECT_NEAR(decay_factor(s.total_weight(), 60.0), 0.64, 1e-15);
  diffuse(s, {60.0, 1.0});
  EXPECT_NEAR(s.sigma, 100.0, 1e-12);
}

TEST(TransferRetention, InfiniteRhoConvention) {
  EXPECT_EQ(transfer_retention(0.999, kInfiniteRho), 0.0);
  EXPECT_EQ(transfer_retention(1.0, kInfiniteRho), 1.0);
  EXPECT_DOUBLE_EQ(transfer_retention(0.64, 1.0), 0.64);
  EXPECT_DOUBLE_EQ(transfer_retention(0.64, 2.0), 0.4096);
}

TEST(Diffuse, HandEvaluatedTransfer) {
  // Total weight 3 and gamma chosen so kappa = 0.64.
  PlayerState s;
  s.gaussian_center = 1400.0;
  s.gaussian_weight = 1.0;
  s.factors = {{1600.0, 1.0, 1.5}, {1700.0, 1.0, 0.5}};
  s.mu = 1550.0;
  s.refresh_sigma();
  const double gamma = std::sqrt((1.0 / 0.64 - 1.0) / 3.0);
  diffuse(s, {gamma, 1.0});
  EXPECT_NEAR(s.gaussian_center, (0.64 * 1400.0 + 1.08 * 1550.0) / 1.72, 1e-9);
  EXPECT_NEAR(s.gaussian_weight, 1.1008, 1e-12);
  EXPECT_NEAR(s.factors[0].weight, 0.4096 * 1.5, 1e-12);
  EXPECT_NEAR(s.factors[1].weight, 0.4096 * 0.5, 1e-12);
  EXPECT_NEAR(s.total_weight(), 0.64 * 3.0, 1e-12);
  EXPECT_EQ(s.mu, 1550.0);
}

TEST(Diffuse, ZeroGammaLeavesWeights) {
  std::mt19937_64 rng(3);
  PlayerState s = random_history(rng, 8);
  PlayerState before = s;
  diffuse(s, {0.0, 2.0});
  before.refresh_sigma();
  EXPECT_EQ(s, before);
}

TEST(Diffuse, RejectsNegativeParameters) {
  PlayerState s = new_player(1500.0, 350.0);
  EXPECT_THROW(diffuse(s, {-1.0, 1.0}), Error);
  EXPECT_THROW(diffuse(s, {1.0, -1.0}), Error);
}

TEST(DiffuseProperty, PreservesRatingAndMagnitude) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> gamma(1.0, 300.0);
  std::uniform_real_distribution<double> rho(0.05, 5.0);
  for (int trial = 0; trial < 300; ++trial) {
    PlayerState s = random_history(rng, 1 + trial % 25);
    const double sigma = s.sigma;
    const double mu = s.mu;
    const double g = gamma(rng);
    diffuse(s, {g, rho(rng)});
    EXPECT_NEAR(solve_rating(s), mu, 1e-6);
    EXPECT_NEAR(s.sigma * s.sigma, sigma * sigma + g * g, 1e-9 * (sigma * sigma + g * g));
  }
}

TEST(DiffuseProperty, Composable) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> gamma(1.0, 200.0);
  for (int trial = 0; trial < 200; ++trial) {
    PlayerState a = random_history(rng, 1 + trial % 20);
    PlayerState b = a;
    const double g1 = gamma(rng);
    const double g2 = gamma(rng);
    diffuse(a, {g1, 1.0});
    diffuse(a, {g2, 1.0});
    diffuse(b, {std::hypot(g1, g2), 1.0});
    EXPECT_NEAR(a.gaussian_weight, b.gaussian_weight, 1e-9 * b.gaussian_weight);
    EXPECT_NEAR(a.gaussian_center, b.gaussian_center, 1e-9 * std::abs(b.gaussian_center));
    for (std::size_t k = 0; k < a.factors.size(); ++k) {
      EXPECT_NEAR(a.factors[k].weight, b.factors[k].weight, 1e-9 * b.factors[k].weight);
    }
  }
}

TEST(DiffuseProperty, InfiniteRhoMatchesExplicitCollapse) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    PlayerState s = random_history(rng, 1 + trial % 10);
    PlayerState collapsed = s;
    collapsed.gaussian_center = s.mu;
    collapsed.gaussian_weight = s.total_weight();
    collapsed.factors.clear();
    diffuse_gaussian(collapsed, 70.0);

    diffuse(s, {70.0, kInfiniteRho});
    EXPECT_NEAR(s.gaussian_center, collapsed.gaussian_center, 1e-9);
    EXPECT_NEAR(s.gaussian_weight, collapsed.gaussian_weight, 1e-12 * collapsed.gaussian_weight);
    for (const auto& f : s.factors) EXPECT_EQ(f.weight, 0.0);
  }
}

TEST(DiffuseGaussian, Pythagorean) {
  PlayerState s = new_player(1500.0, 300.0);
  diffuse_gaussian(s, 400.0);
  EXPECT_NEAR(s.sigma, 500.0, 1e-9);
  EXPECT_EQ(s.mu, 1500.0);
  EXPECT_EQ(s.gaussian_center, 1500.0);
}

TEST(DiffuseGaussian, ZeroGammaIsIdentity) {
  PlayerState s = new_player(1500.0, 300.0);
  const PlayerState before = s;
  diffuse_gaussian(s, 0.0);
  EXPECT_EQ(s, before);
}

TEST(DiffuseGaussian, Composable) {
  PlayerState a = new_player(1500.0, 300.0);
  PlayerState b = a;
  for (int k = 0; k < 10; ++k) diffuse_gaussian(a, 35.0);
  diffuse_gaussian(b, 35.0 * std::sqrt(10.0));
  EXPECT_NEAR(a.sigma, b.sigma, 1e-12 * b.sigma);
}

TEST(DiffuseGaussian, RejectsHistory) {
  PlayerState s = new_player(1500.0, 300.0);
  push_performance(s, 1600.0, 200.0);
  try {
    diffuse_gaussian(s, 10.0);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kVariantMismatch);
  }
}

}  // namespace
}  // namespace elommr
