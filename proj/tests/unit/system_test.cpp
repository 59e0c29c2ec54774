#include "elommr/system.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "elommr/checkpoint.hpp"
#include "elommr/drift.hpp"
#include "elommr/error.hpp"
#include "elommr/synthetic.hpp"

namespace elommr {
namespace {

ContestStandings strict_contest(std::string id, std::int64_t index,
                                const std::vector<std::string>& order) {
  ContestStandings c;
  c.id = std::move(id);
  c.index = index;
  for (const auto& p : order) c.groups.push_back({p});
  return c;
}

SyntheticDataset small_dataset(std::uint64_t seed, std::size_t players = 60,
                               std::size_t rounds = 12) {
  SyntheticConfig cfg;
  cfg.num_players = players;
  cfg.num_rounds = rounds;
  cfg.participation = 0.6;
  cfg.seed = seed;
  return generate_synthetic(cfg);
}

TEST(ProcessRound, EqualNewcomersWinnerAhead) {
  for (const auto variant : {Variant::kChi, Variant::kRho, Variant::kInfinity}) {
    SystemParams params;
    params.variant = variant;
    RatingSystem system(params);
    const RoundReport report = system.process_round(strict_contest("c", 0, {"win", "lose"}));
    const auto& players = system.players();
    EXPECT_GT(players.at("win").mu, players.at("lose").mu);
    EXPECT_EQ(players.at("win").sigma, players.at("lose").sigma);
    EXPECT_NEAR(players.at("win").mu - 1500.0, 1500.0 - players.at("lose").mu, 1e-6);
    ASSERT_EQ(report.results.size(), 2u);
    EXPECT_TRUE(report.results[0].newcomer);
    EXPECT_EQ(report.results[0].prior_rating, 1500.0);
  }
}

TEST(ProcessRound, NewcomersRankedByFinish) {
  RatingSystem system(SystemParams{});
  system.process_round(strict_contest("a", 0, {"x1", "x2"}));
  system.process_round(strict_contest("b", 1, {"n1", "n2", "n3", "n4"}));
  const auto& players = system.players();
  EXPECT_GT(players.at("n1").mu, players.at("n2").mu);
  EXPECT_GT(players.at("n2").mu, players.at("n3").mu);
  EXPECT_GT(players.at("n3").mu, players.at("n4").mu);
}

TEST(ProcessRound, TiedNewcomersShareRating) {
  RatingSystem system(SystemParams{});
  ContestStandings c;
  c.id = "t";
  c.groups = {{"a"}, {"b", "c"}, {"d"}};
  system.process_round(c);
  EXPECT_EQ(system.players().at("b").mu, system.players().at("c").mu);
}

TEST(ProcessRound, BetaOverrideIsUsed) {
  SystemParams params;
  params.variant = Variant::kChi;
  ContestStandings c = strict_contest("c", 0, {"a", "b"});
  RatingSystem plain(params);
  plain.process_round(c);
  c.beta_override = 800.0;
  RatingSystem wide(params);
  const RoundReport report = wide.process_round(c);
  EXPECT_EQ(report.beta, 800.0);
  // A noisier round moves ratings less.
  EXPECT_LT(wide.players().at("a").mu, plain.players().at("a").mu);
}

TEST(ProcessRound, NonParticipantsUntouched) {
  const auto data = small_dataset(31);
  RatingSystem system(SystemParams{});
  for (const auto& contest : data.contests) {
    const PlayerMap before = system.players();
    system.process_round(contest);
    std::set<std::string> present;
    for (const auto& g : contest.groups) present.insert(g.begin(), g.end());
    for (const auto& [id, state] : before) {
      if (!present.count(id)) ASSERT_EQ(system.players().at(id), state) << id;
    }
  }
}

TEST(ProcessRound, InvalidContestLeavesStatesUntouched) {
  RatingSystem system(SystemParams{});
  system.process_round(strict_contest("a", 0, {"p", "q", "r"}));
  const PlayerMap before = system.players();
  ContestStandings bad = strict_contest("b", 1, {"p", "s", "p"});
  try {
    system.process_round(bad);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidation);
  }
  EXPECT_EQ(system.players(), before);
  bad.groups = {};
  EXPECT_THROW(system.process_round(bad), Error);
  EXPECT_EQ(system.players(), before);
}

TEST(ProcessRound, WorkerCountDoesNotChangeOutput) {
  const auto data = small_dataset(32, 300, 6);
  for (const auto variant : {Variant::kChi, Variant::kRho, Variant::kInfinity}) {
    SystemParams params;
    params.variant = variant;
    RatingSystem serial(params, 1);
    RatingSystem parallel(params, 3);
    for (const auto& contest : data.contests) {
      ASSERT_EQ(serial.process_round(contest), parallel.process_round(contest));
    }
    EXPECT_EQ(serial.players(), parallel.players());
  }
}

TEST(ProcessRound, SubsampledRoundsStayDeterministic) {
  const auto data = small_dataset(33, 120, 5);
  SystemParams params;
  params.subsample_cap = 10;
  RatingSystem a(params, 1);
  RatingSystem b(params, 4);
  for (const auto& contest : data.contests) {
    ASSERT_EQ(a.process_round(contest), b.process_round(contest));
  }
}

TEST(ProcessRound, HistoryCapBoundsFactors) {
  const auto data = small_dataset(34, 30, 20);
  SystemParams params;
  params.history_cap = 3;
  RatingSystem system(params);
  for (const auto& contest : data.contests) system.process_round(contest);
  for (const auto& [id, state] : system.players()) {
    EXPECT_LE(state.factors.size(), 3u) << id;
    EXPECT_NEAR(1.0 / (state.sigma * state.sigma), state.total_weight(),
                1e-12 * state.total_weight());
  }
}

TEST(ProcessRound, GaussianVariantsKeepNoHistory) {
  const auto data = small_dataset(35);
  for (const auto variant : {Variant::kChi, Variant::kInfinity}) {
    SystemParams params;
    params.variant = variant;
    RatingSystem system(params);
    for (const auto& contest : data.contests) system.process_round(contest);
    for (const auto& [id, state] : system.players()) EXPECT_TRUE(state.is_gaussian_only()) << id;
  }
}

TEST(ProcessRound, CheckpointResumeIsBitIdentical) {
  const auto data = small_dataset(36);
  RatingSystem full(SystemParams{});
  for (const auto& contest : data.contests) full.process_round(contest);

  RatingSystem first(SystemParams{});
  const std::size_t half = data.contests.size() / 2;
  for (std::size_t t = 0; t < half; ++t) first.process_round(data.contests[t]);
  std::stringstream buffer;
  save_checkpoint(first.players(), buffer);
  RatingSystem resumed(SystemParams{});
  resumed.mutable_players() = load_checkpoint(buffer);
  for (std::size_t t = half; t < data.contests.size(); ++t) {
    resumed.process_round(data.contests[t]);
  }
  EXPECT_EQ(resumed.players(), full.players());
}

TEST(ProcessRoundProperty, MemorylessMonotonicity) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> rating(1000.0, 2000.0);
  std::uniform_real_distribution<double> sigma(60.0, 300.0);
  for (const auto variant : {Variant::kChi, Variant::kInfinity}) {
    SystemParams params;
    params.variant = variant;
    for (int trial = 0; trial < 200; ++trial) {
      PlayerMap states;
      std::vector<std::string> order;
      const int n = 3 + trial % 12;
      for (int k = 0; k < n; ++k) {
        const std::string id = "p" + std::to_string(k);
        states[id] = new_player(rating(rng), sigma(rng));
        order.push_back(id);
      }
      const double shared_sigma = sigma(rng);
      const double hi = rating(rng);
      const double lo = hi - std::abs(rating(rng) - 1500.0) * 0.3;
      states["i"] = new_player(hi, shared_sigma);
      states["j"] = new_player(lo, shared_sigma);
      order.push_back("i");
      order.push_back("j");
      std::shuffle(order.begin(), order.end(), rng);
      const PlayerMap before = states;
      process_round(states, strict_contest("r", 0, order), params);
      const auto& i = states.at("i");
      const auto& j = states.at("j");
      ASSERT_NEAR(i.sigma, j.sigma, 1e-12 * i.sigma);
      const bool i_first = std::find(order.begin(), order.end(), "i") <
                           std::find(order.begin(), order.end(), "j");
      if (i_first) {
        ASSERT_GT(i.mu, j.mu) << "trial " << trial;
      } else {
        ASSERT_GT(j.mu - before.at("j").mu, i.mu - before.at("i").mu) << "trial " << trial;
      }
    }
  }
}

TEST(ProcessRoundProperty, RobustResponseBounds) {
  const auto data = small_dataset(38, 40, 15);
  SystemParams params;
  RatingSystem system(params);
  for (const auto& contest : data.contests) system.process_round(contest);
  for (const auto& [id, state] : system.players()) {
    if (state.contest_count < 3) continue;
    PlayerMap states = system.players();
    PlayerState giant = new_player(state.mu + 1e4, 60.0);
    states["giant"] = giant;
    PlayerState prior = state;
    diffuse(prior, {params.gamma, params.effective_rho()});
    const double beta_bar = std::sqrt(3.0) * params.beta / std::numbers::pi;
    double history = 0.0;
    for (const auto& f : prior.factors) history += f.weight;
    const double upper = (1.0 / beta_bar) / prior.gaussian_weight;
    const double lower =
        (1.0 / beta_bar) / (prior.gaussian_weight + std::numbers::pi * std::numbers::pi / 6.0 * history);
    process_round(states, strict_contest("win", 100, {id, "giant"}), params);
    const double change = states.at(id).mu - prior.mu;
    EXPECT_LE(change, upper + params.tol) << id;
    EXPECT_GE(change, lower - params.tol) << id;
  }
}

TEST(RatingSummary, EmptyMap) { EXPECT_TRUE(rating_summary({}).empty()); }

TEST(RatingSummary, SortedByRatingThenId) {
  PlayerMap states;
  states["b"] = new_player(1500.0, 300.0);
  states["a"] = new_player(1500.0, 300.0);
  states["c"] = new_player(1600.0, 300.0);
  states["c"].contest_count = 4;
  const auto board = rating_summary(states);
  ASSERT_EQ(board.size(), 3u);
  EXPECT_EQ(board[0].player_id, "c");
  EXPECT_EQ(board[0].contest_count, 4);
  EXPECT_EQ(board[1].player_id, "a");
  EXPECT_EQ(board[2].player_id, "b");
  EXPECT_EQ(board[2].sigma, 300.0);
}

}  // namespace
}  // namespace elommr
