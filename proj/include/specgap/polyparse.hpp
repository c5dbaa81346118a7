#pragma once

#include <stdexcept>
#include <string>

#include "specgap/parampoly.hpp"
#include "specgap/poly1.hpp"

namespace specgap {

/// column is 1-based into the offending input string.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int column)
      : std::runtime_error(what + " (column " + std::to_string(column) + ")"), column_(column) {}
  int column() const { return column_; }

 private:
  int column_;
};

/// Grammar: signed sum of '*'-joined factors. A factor is a number
/// (integer, fraction p/q, or decimal, all read exactly), x or x^k, or a
/// parameter l1..l9 (optionally l<d>^k). Whitespace is free between tokens.
/// The arity of the result is the highest parameter index used (0 if none).
ParamPoly parseFamily(const std::string& text);

/// Same grammar restricted to x: parameters are rejected with a ParseError.
Poly1 parsePotential(const std::string& text);

}  // namespace specgap
