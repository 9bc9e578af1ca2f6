// errors.hpp -- error types shared across modules
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace memforge {

// Positioned syntax error from any of the textual frontends.
struct ParseError : std::runtime_error {
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line(line),
        column(column),
        detail(message) {}

  std::size_t line;
  std::size_t column;
  std::string detail;
};

struct HaltedError : std::runtime_error {
  HaltedError() : std::runtime_error("configuration has no successors") {}
};

struct IncompatibleModeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MultipleTravellerCrossingsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NeedsTwoRegistersError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TracesUnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotApplicableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace memforge
