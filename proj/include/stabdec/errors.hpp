#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace stabdec {

/// Malformed text input (Pauli strings, circuit files, code files).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A StabilizerCode that fails validate(). Carries the violation list.
struct ValidationError : std::runtime_error {
  explicit ValidationError(std::vector<std::string> violations_)
      : std::runtime_error(join(violations_)), violations(std::move(violations_)) {}

  std::vector<std::string> violations;

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string msg = "code validation failed:";
    for (const auto& s : v) {
      msg += "\n  - " + s;
    }
    return msg;
  }
};

/// An operation precondition that does not hold; the message names it.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A size or resource limit exceeded (simulation width, search space).
struct LimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace stabdec
