#pragma once

#include <stdexcept>
#include <string>

namespace elommr {

enum class ErrorKind {
  kBracketFailure,
  kNumericDomain,
  kVariantMismatch,
  kValidation,
  kParse,
  kVersion,
  kIo,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure surfaced by the library carries one of the kinds above so the
// command-line front end can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  bool is_numeric() const noexcept {
    return kind_ == ErrorKind::kBracketFailure ||
           kind_ == ErrorKind::kNumericDomain;
  }

 private:
  ErrorKind kind_;
};

}  // namespace elommr
