// Error types shared by all paradet modules.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace paradet {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad call arguments (out-of-range level, empty set where non-empty required, ...).
struct argument_error : error {
  using error::error;
};

// Structurally invalid automaton or tree handed to an operation.
struct validation_error : error {
  using error::error;
};

// A configurable resource budget was exceeded.
struct capacity_error : error {
  capacity_error(const std::string& what, std::size_t budget_arg)
      : error(what), budget(budget_arg) {}
  std::size_t budget;
};

// Malformed input text.
struct parse_error : error {
  parse_error(const std::string& what, std::size_t line_arg, std::size_t column_arg)
      : error("line " + std::to_string(line_arg) + ", column " + std::to_string(column_arg) +
              ": " + what),
        line(line_arg),
        column(column_arg) {}
  std::size_t line;
  std::size_t column;
};

// Recognised but unsupported input feature (e.g. Streett acceptance).
struct unsupported_error : error {
  using error::error;
};

}  // namespace paradet
