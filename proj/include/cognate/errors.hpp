#pragma once

#include <stdexcept>
#include <string>

namespace cognate {

// Mismatched variable counts between operands.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Request exceeds a hard size cap (n > 20 for tables, n > 14 for
// algebraic immunity, k > 10 for consistency ratios).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Text input rejected; carries 1-based line/column of the offending spot.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int column)
      : std::runtime_error(std::move(message)), line(line), column(column) {}

  int line;
  int column;
};

// Iterative numeric procedure failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cognate
