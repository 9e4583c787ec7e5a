#pragma once

#include <string>

#include "perioctrl/polymatrix.hpp"

namespace perioctrl {

/// Canonical, re-parseable polynomial strings. Sums are printed with terms in
/// descending order (t-degree first), signs folded into the '+'/'-' joins,
/// and every factor valid in the entry grammar; report output additionally
/// uses the 'pi' literal and coefficient quotients "(...)/(...)".

std::string print_gaussian(const GaussianRational& c);
std::string print_pipoly(const PiPoly& p);
std::string print_field(const FieldElement& x);
std::string print_unipoly(const UniPoly& p);

/// Input-language form with variables x1..xd and t.
std::string print_poly(const MultiPoly& p, std::size_t d);

/// Screening-report form with variables v1..vd, pi and t (nvars = d + 2).
std::string print_poly_generic(const MultiPoly& p, std::size_t d);

/// JSON array-of-arrays of entry strings.
std::string print_matrix(const MultiPolyMatrix& M);

/// Row-per-line bracket form for text reports.
std::string print_unipoly_matrix(const UniPolyMatrix& M);

}  // namespace perioctrl
