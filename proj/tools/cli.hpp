#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace elommr::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitNumeric = 3,
};

// Runs the elommr command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const char* version() noexcept;

}  // namespace elommr::cli
