#include "elommr/checkpoint.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "elommr/error.hpp"
#include "text_format.hpp"

namespace elommr {

namespace {

constexpr std::string_view kMagic = "elommr-checkpoint";

[[noreturn]] void corrupt(std::size_t line_no, const std::string& what) {
  throw Error(ErrorKind::kParse,
              "checkpoint line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

void save_checkpoint(const PlayerMap& states, std::ostream& out) {
  std::vector<const PlayerMap::value_type*> sorted;
  sorted.reserve(states.size());
  for (const auto& entry : states) sorted.push_back(&entry);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return a->first < b->first; });

  using text::format_double;
  out << kMagic << ' ' << kCheckpointVersion << '\n';
  out << "players " << states.size() << '\n';
  for (const auto* entry : sorted) {
    const PlayerState& s = entry->second;
    out << entry->first << ' ' << format_double(s.gaussian_center) << ' '
        << format_double(s.gaussian_weight) << ' ' << format_double(s.mu) << ' '
        << format_double(s.sigma) << ' ' << s.contest_count << ' ' << s.last_update_round
        << ' ' << s.factors.size();
    for (const auto& f : s.factors) {
      out << ' ' << format_double(f.center) << ' ' << format_double(f.beta) << ' '
          << format_double(f.weight);
    }
    out << '\n';
  }
}

void save_checkpoint(const PlayerMap& states, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  save_checkpoint(states, out);
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

PlayerMap load_checkpoint(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::kVersion, "empty checkpoint");
  {
    std::vector<std::string_view> words;
    text::split_words(line, [&](std::string_view w) { words.push_back(w); });
    if (words.size() != 2 || words[0] != kMagic) {
      throw Error(ErrorKind::kVersion, "not an elommr checkpoint");
    }
    const auto version = text::parse_int(words[1]);
    if (!version || *version != kCheckpointVersion) {
      throw Error(ErrorKind::kVersion, "unsupported checkpoint version '" +
                                           std::string(words[1]) + "', expected " +
                                           std::to_string(kCheckpointVersion));
    }
  }

  std::size_t line_no = 2;
  if (!std::getline(in, line)) corrupt(line_no, "missing player count");
  std::int64_t count = 0;
  {
    std::vector<std::string_view> words;
    text::split_words(line, [&](std::string_view w) { words.push_back(w); });
    const auto parsed = words.size() == 2 && words[0] == "players"
                            ? text::parse_int(words[1])
                            : std::nullopt;
    if (!parsed || *parsed < 0) corrupt(line_no, "expected 'players <count>'");
    count = *parsed;
  }

  PlayerMap states;
  states.reserve(static_cast<std::size_t>(count));
  std::vector<std::string_view> words;
  for (std::int64_t p = 0; p < count; ++p) {
    ++line_no;
    if (!std::getline(in, line)) corrupt(line_no, "truncated checkpoint");
    words.clear();
    text::split_words(line, [&](std::string_view w) { words.push_back(w); });
    if (words.size() < 8) corrupt(line_no, "too few fields");

    auto number = [&](std::size_t k) {
      const auto v = text::parse_double(words[k]);
      if (!v) corrupt(line_no, "bad number '" + std::string(words[k]) + "'");
      return *v;
    };
    auto integer = [&](std::size_t k) {
      const auto v = text::parse_int(words[k]);
      if (!v) corrupt(line_no, "bad integer '" + std::string(words[k]) + "'");
      return *v;
    };

    PlayerState s;
    s.gaussian_center = number(1);
    s.gaussian_weight = number(2);
    s.mu = number(3);
    s.sigma = number(4);
    s.contest_count = integer(5);
    s.last_update_round = integer(6);
    const std::int64_t factors = integer(7);
    if (factors < 0 || words.size() != 8 + 3 * static_cast<std::size_t>(factors)) {
      corrupt(line_no, "factor count does not match the record length");
    }
    s.factors.reserve(static_cast<std::size_t>(factors));
    for (std::size_t k = 0; k < static_cast<std::size_t>(factors); ++k) {
      s.factors.push_back({number(8 + 3 * k), number(9 + 3 * k), number(10 + 3 * k)});
    }
    if (!(s.gaussian_weight > 0.0) || !(s.sigma > 0.0) || !std::isfinite(s.mu) ||
        !std::isfinite(s.gaussian_center)) {
      corrupt(line_no, "player state out of range");
    }
    for (const auto& f : s.factors) {
      if (!(f.beta > 0.0) || !(f.weight >= 0.0) || !std::isfinite(f.center)) {
        corrupt(line_no, "factor out of range");
      }
    }
    if (!states.emplace(std::string(words[0]), std::move(s)).second) {
      corrupt(line_no, "duplicate player '" + std::string(words[0]) + "'");
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!text::trim(line).empty()) corrupt(line_no, "more records than announced");
  }
  return states;
}

PlayerMap load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return load_checkpoint(in);
}

}  // namespace elommr
