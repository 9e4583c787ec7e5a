#pragma once

#include <stdexcept>
#include <string>

#include "perioctrl/polymatrix.hpp"

namespace perioctrl {

/// Syntax or semantic error in the polynomial input language, carrying the
/// 1-based position of the offending character.
struct ParseError : std::runtime_error {
  int line;
  int col;
  std::string raw;  ///< message without the " (line L, column C)" suffix
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                           std::to_string(col_) + ")"),
        line(line_),
        col(col_),
        raw(msg) {}
};

/// Parses one polynomial in the variables x1..xd and t.
MultiPoly parse_poly(const std::string& src, std::size_t d);

/// Parses a matrix of polynomial entries. Accepts either a JSON
/// array-of-arrays of entry strings or the bare bracket form
/// "[[t - x1^2]]" with entries separated by commas.
MultiPolyMatrix parse_matrix(const std::string& source, std::size_t d);

/// Parses the output dialect: variables t and pi, imaginary unit i, and '/'
/// permitted between factors (this is the grammar the tool's own reports are
/// written in). The result must be a polynomial in t; a nonconstant
/// denominator is an error.
UniPoly parse_unipoly_pi(const std::string& src);

}  // namespace perioctrl
