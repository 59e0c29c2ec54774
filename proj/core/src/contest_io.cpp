#include "elommr/contest_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "elommr/error.hpp"
#include "text_format.hpp"

namespace elommr {

namespace {

class LineParser {
 public:
  LineParser(const std::string& source, std::size_t line_no)
      : source_(source), line_no_(line_no) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::kParse, source_ + ":" + std::to_string(line_no_) + ": " + what);
  }

  ContestRecord parse(std::string_view line) const {
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) fail("missing ':' after contest id");

    ContestRecord record;
    bool first = true;
    text::split_words(line.substr(0, colon), [&](std::string_view word) {
      if (first) {
        if (!is_valid_id(word)) fail("invalid contest id '" + std::string(word) + "'");
        record.id = std::string(word);
        first = false;
        return;
      }
      parse_attribute(word, record);
    });
    if (first) fail("missing contest id");

    std::string_view body = line.substr(colon + 1);
    while (true) {
      body = text::trim(body);
      if (body.empty()) break;
      if (body.front() != '[') fail("expected '[' to open a tie group");
      const auto close = body.find(']');
      if (close == std::string_view::npos) fail("unterminated tie group");
      std::vector<std::string> group;
      text::split_words(body.substr(1, close - 1), [&](std::string_view id) {
        if (!is_valid_id(id)) fail("invalid player id '" + std::string(id) + "'");
        group.emplace_back(id);
      });
      if (group.empty()) fail("empty tie group");
      record.groups.push_back(std::move(group));
      body.remove_prefix(close + 1);
    }
    if (record.groups.empty()) fail("contest '" + record.id + "' has no standings");
    try {
      validate_contest(record);
    } catch (const Error& e) {
      fail(e.what());
    }
    return record;
  }

 private:
  void parse_attribute(std::string_view word, ContestRecord& record) const {
    const auto eq = word.find('=');
    if (eq == std::string_view::npos) fail("unexpected token '" + std::string(word) + "'");
    const auto key = word.substr(0, eq);
    const auto value = word.substr(eq + 1);
    if (key == "beta") {
      const auto beta = text::parse_double(value);
      if (!beta || !(*beta > 0.0)) fail("beta must be a positive number");
      record.beta_override = *beta;
    } else if (key == "time") {
      const auto time = text::parse_int(value);
      if (!time) fail("time must be an integer");
      record.timestamp = *time;
    } else {
      fail("unknown attribute '" + std::string(key) + "'");
    }
  }

  const std::string& source_;
  std::size_t line_no_;
};

}  // namespace

std::vector<ContestRecord> parse_contests(std::istream& in, const std::string& source_name) {
  std::vector<ContestRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    auto record = LineParser(source_name, line_no).parse(trimmed);
    record.index = static_cast<std::int64_t>(out.size());
    out.push_back(std::move(record));
  }
  if (in.bad()) throw Error(ErrorKind::kIo, source_name + ": read error");
  return out;
}

std::vector<ContestRecord> parse_contests(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return parse_contests(in, path.string());
}

std::string format_contest(const ContestRecord& contest) {
  std::string line = contest.id;
  if (contest.beta_override) line += " beta=" + text::format_double(*contest.beta_override);
  if (contest.timestamp) line += " time=" + std::to_string(*contest.timestamp);
  line += ":";
  for (const auto& group : contest.groups) {
    line += " [";
    for (std::size_t k = 0; k < group.size(); ++k) {
      if (k > 0) line += ' ';
      line += group[k];
    }
    line += ']';
  }
  return line;
}

void write_contests(std::ostream& out, std::span<const ContestRecord> contests) {
  for (const auto& contest : contests) out << format_contest(contest) << '\n';
}

void write_contests(const std::filesystem::path& path, std::span<const ContestRecord> contests) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  write_contests(out, contests);
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

}  // namespace elommr
