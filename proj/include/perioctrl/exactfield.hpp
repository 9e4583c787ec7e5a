#pragma once

#include <complex>
#include <stdexcept>

#include "perioctrl/dense_poly.hpp"
#include "perioctrl/fraction.hpp"
#include "perioctrl/gaussian.hpp"
#include "perioctrl/rational.hpp"

namespace perioctrl {

/// Polynomials in the transcendence symbol pi over Q(i). Treating pi as a
/// free indeterminate keeps every rank, gcd and degree computation exact:
/// no nonzero element of this ring vanishes at the true value of pi.
using PiPoly = DensePoly<GaussianRational>;

/// Specialized gcd: the generic monic remainder sequence suffers severe
/// rational-coefficient swell at the degrees fraction reduction produces, so
/// pi-polynomials use a subresultant sequence over Gaussian integers instead.
template <>
DensePoly<GaussianRational> DensePoly<GaussianRational>::gcd(DensePoly<GaussianRational> a,
                                                             DensePoly<GaussianRational> b);

/// The coefficient field F = Q(i)(pi) that frequency substitution lands in.
using FieldElement = Fraction<PiPoly>;

inline FieldElement field_from(const GaussianRational& c) {
  return FieldElement(PiPoly(c));
}
inline FieldElement field_from(const Rational& c) { return field_from(GaussianRational(c)); }
inline FieldElement field_from(long c) { return FieldElement(c); }

inline FieldElement field_i() { return field_from(GaussianRational::i()); }
inline FieldElement field_pi() {
  return FieldElement(PiPoly::monomial(GaussianRational(1), 1));
}

/// The substitution value 2*i*pi*v for a rational frequency component v.
inline FieldElement field_two_i_pi(const Rational& v) {
  GaussianRational c(Rational(0), Rational(2) * v);
  return FieldElement(PiPoly::monomial(c, 1));
}

inline FieldElement field_add(const FieldElement& a, const FieldElement& b) { return a + b; }
inline FieldElement field_mul(const FieldElement& a, const FieldElement& b) { return a * b; }
inline FieldElement field_inv(const FieldElement& a) { return a.inv(); }

inline std::complex<double> pipoly_to_complex(const PiPoly& p, double pi_approx) {
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t k = p.coeffs().size(); k-- > 0;)
    acc = acc * pi_approx + p.coeff(k).to_complex();
  return acc;
}

/// Floating evaluation with pi mapped to pi_approx. The denominator cannot
/// vanish exactly (pi is transcendental), but a rounded evaluation can still
/// collapse; anything below 1e-300 in magnitude is treated as a failure.
inline std::complex<double> field_to_complex(const FieldElement& a, double pi_approx) {
  std::complex<double> den = pipoly_to_complex(a.den(), pi_approx);
  if (std::abs(den) < 1e-300)
    throw std::runtime_error("field_to_complex: denominator vanished at the pi approximation");
  return pipoly_to_complex(a.num(), pi_approx) / den;
}

}  // namespace perioctrl
