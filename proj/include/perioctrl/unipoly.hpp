#pragma once

#include <utility>

#include "perioctrl/exactfield.hpp"

namespace perioctrl {

/// Univariate polynomials over F in the operator variable tau, and the
/// rational functions over them (used for rank computations over F(tau)).
using UniPoly = DensePoly<FieldElement>;
using RatFunc = Fraction<UniPoly>;

/// Euclidean division: a = q*b + r with deg r < deg b. Throws on b = 0.
inline std::pair<UniPoly, UniPoly> poly_divmod(const UniPoly& a, const UniPoly& b) {
  return UniPoly::divmod(a, b);
}

/// Specialized gcd: the generic monic remainder sequence drags fraction
/// reductions through every step, which is ruinous over F. This runs an
/// integer subresultant sequence in Z[i][pi][tau] instead and normalizes the
/// result to the same monic form.
template <>
UniPoly DensePoly<FieldElement>::gcd(UniPoly a, UniPoly b);

/// Monic gcd via the Euclidean remainder sequence. Throws on gcd(0, 0).
inline UniPoly poly_gcd(const UniPoly& a, const UniPoly& b) { return UniPoly::gcd(a, b); }

/// Extended Euclid data: s*a + t*b = c*g with c a nonzero field constant,
/// g primitive (denominator-free, not monic) and s, t denominator-free.
struct ExtendedGcd {
  UniPoly g, s, t;
  FieldElement c;
};

/// Extended gcd over F[tau]; both operands must be nonzero. The cofactors
/// come out of the same integer subresultant walk as the gcd, so no step of
/// the computation reduces a fraction.
ExtendedGcd extended_gcd(const UniPoly& a, const UniPoly& b);

/// True iff d divides a exactly. Cheaper than divmod on bulky operands: the
/// pseudo-remainder recurrence underneath never forms a fraction.
bool poly_divides(const UniPoly& d, const UniPoly& a);

inline UniPoly poly_derivative(const UniPoly& a) { return a.derivative(); }

inline FieldElement poly_eval(const UniPoly& a, const FieldElement& x) { return a.eval(x); }

inline UniPoly unipoly_tau() { return UniPoly::variable(); }
inline UniPoly unipoly_const(FieldElement c) { return UniPoly(std::move(c)); }

}  // namespace perioctrl
