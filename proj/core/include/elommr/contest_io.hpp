#pragma once

// Line-oriented contest stream format, one contest per line:
//
//   # comment
//   <contest-id> [beta=<real>] [time=<int>] : [<id> <id> ...] [<id> ...] ...
//
// Bracketed groups are tie groups in finishing order, best first. Blank lines
// and lines starting with '#' are ignored. Contest indices are assigned in file
// order starting from 0.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "elommr/contest.hpp"

namespace elommr {

// Throws Error(kParse) with "<source>:<line>: ..." on malformed input.
std::vector<ContestRecord> parse_contests(std::istream& in,
                                          const std::string& source_name = "<input>");
std::vector<ContestRecord> parse_contests(const std::filesystem::path& path);

std::string format_contest(const ContestRecord& contest);
void write_contests(std::ostream& out, std::span<const ContestRecord> contests);
void write_contests(const std::filesystem::path& path, std::span<const ContestRecord> contests);

}  // namespace elommr
