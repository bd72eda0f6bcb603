#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twqbf {

/// Malformed input text. `line()` is 1-based; 0 means "end of input".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(format(line, what)), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(std::size_t line, const std::string& what) {
    if (line == 0) return "parse error at end of input: " + what;
    return "parse error at line " + std::to_string(line) + ": " + what;
  }

  std::size_t line_;
};

/// An instance is too large for an exhaustive procedure.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural precondition on a decomposition or formula does not hold.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace twqbf
