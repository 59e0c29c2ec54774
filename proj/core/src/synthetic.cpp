#include "elommr/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>

#include "elommr/error.hpp"
#include "text_format.hpp"

namespace elommr {

void SyntheticConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::kValidation, what); };
  if (num_players < 1) fail("need at least one player");
  if (!(skill_spread > 0.0) || !(perf_spread > 0.0) || !(drift_spread > 0.0)) {
    fail("spreads must be positive");
  }
  if (!(participation > 0.0 && participation <= 1.0)) fail("participation must be in (0, 1]");
  if (!std::isfinite(skill_mean)) fail("skill mean must be finite");
}

std::string synthetic_player_id(std::size_t index, std::size_t num_players) {
  const std::size_t width = std::to_string(num_players > 0 ? num_players - 1 : 0).size();
  std::string digits = std::to_string(index);
  return "P" + std::string(width > digits.size() ? width - digits.size() : 0, '0') + digits;
}

SyntheticDataset generate_synthetic(const SyntheticConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution enters(cfg.participation);

  std::vector<std::string> ids(cfg.num_players);
  std::vector<double> skill(cfg.num_players);
  for (std::size_t p = 0; p < cfg.num_players; ++p) {
    ids[p] = synthetic_player_id(p, cfg.num_players);
    skill[p] = cfg.skill_mean + cfg.skill_spread * normal(rng);
  }

  SyntheticDataset data;
  data.contests.reserve(cfg.num_rounds);
  data.truth.reserve(cfg.num_rounds);
  const std::size_t round_width = std::to_string(cfg.num_rounds).size();
  std::vector<std::size_t> participants;
  std::vector<double> perf(cfg.num_players);
  for (std::size_t t = 0; t < cfg.num_rounds; ++t) {
    participants.clear();
    for (std::size_t p = 0; p < cfg.num_players; ++p) {
      if (cfg.participation >= 1.0 || enters(rng)) participants.push_back(p);
    }
    if (participants.empty()) {
      participants.push_back(std::uniform_int_distribution<std::size_t>(
          0, cfg.num_players - 1)(rng));
    }
    for (const std::size_t p : participants) {
      perf[p] = skill[p] + cfg.perf_spread * normal(rng);
    }
    std::stable_sort(participants.begin(), participants.end(),
                     [&](std::size_t a, std::size_t b) { return perf[a] > perf[b]; });

    ContestRecord contest;
    std::string digits = std::to_string(t + 1);
    contest.id = "R" + std::string(round_width - digits.size(), '0') + digits;
    contest.index = static_cast<std::int64_t>(t);
    std::vector<SkillSample> truth;
    truth.reserve(participants.size());
    for (std::size_t k = 0; k < participants.size(); ++k) {
      const std::size_t p = participants[k];
      if (k == 0 || perf[p] != perf[participants[k - 1]]) contest.groups.emplace_back();
      contest.groups.back().push_back(ids[p]);
      truth.push_back({ids[p], skill[p], perf[p]});
    }
    data.contests.push_back(std::move(contest));
    data.truth.push_back(std::move(truth));

    for (auto& s : skill) s += cfg.drift_spread * normal(rng);
  }
  return data;
}

void write_ground_truth(std::ostream& out, const SyntheticDataset& data) {
  out << "# contest player skill performance\n";
  for (std::size_t t = 0; t < data.contests.size(); ++t) {
    for (const auto& sample : data.truth[t]) {
      out << data.contests[t].id << ' ' << sample.player_id << ' '
          << text::format_double(sample.skill) << ' '
          << text::format_double(sample.performance) << '\n';
    }
  }
}

void write_ground_truth(const std::filesystem::path& path, const SyntheticDataset& data) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  write_ground_truth(out, data);
}

}  // namespace elommr
