#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace studykin {

/// Closed set of failure categories surfaced by the library, CLI and service.
enum class ErrorCode {
  bad_input,
  off_quadric,
  on_generator_space,
  degenerate_line,
  not_found,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::bad_input: return "bad_input";
    case ErrorCode::off_quadric: return "off_quadric";
    case ErrorCode::on_generator_space: return "on_generator_space";
    case ErrorCode::degenerate_line: return "degenerate_line";
    case ErrorCode::not_found: return "not_found";
  }
  return "bad_input";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Filesystem failures of the scene store. Kept apart from Error so that
/// callers can tell validation problems from environment problems.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default absolute tolerance for membership predicates on normalized
/// representatives.
inline constexpr double kDefaultTol = 1e-9;

}  // namespace studykin
