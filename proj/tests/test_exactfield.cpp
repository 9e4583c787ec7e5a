#include <doctest.h>

#include <complex>
#include <random>

#include "perioctrl/exactfield.hpp"
#include "perioctrl/printer.hpp"
#include "support/gen.hpp"

using namespace perioctrl;

TEST_SUITE("exactfield") {

TEST_CASE("rational canonical form") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(1, 2).denominator() == 2);
  CHECK(Rational(-3, 6).numerator() == -1);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational arithmetic and parsing") {
  CHECK(Rational::from_string("3/4") == Rational(3, 4));
  CHECK(Rational::from_string("-3/4") == Rational(-3, 4));
  CHECK(Rational::from_string("5") == Rational(5));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
  CHECK(Rational(3, 4).str() == "3/4");
  CHECK(Rational(-5).str() == "-5");
}

// Exactness sentinel: the 100th harmonic number summed forward equals the
// same sum accumulated in reverse (and pairwise), which floating arithmetic
// would not reproduce bit-for-bit.
TEST_CASE("harmonic sum sentinel H_100") {
  Rational forward(0);
  for (long k = 1; k <= 100; ++k) forward = forward + Rational(1, k);
  Rational backward(0);
  for (long k = 100; k >= 1; --k) backward = backward + Rational(1, k);
  Rational paired(0);
  for (long k = 1; k <= 50; ++k)
    paired = paired + (Rational(1, k) + Rational(1, 101 - k));
  CHECK(forward == backward);
  CHECK(forward == paired);
  // known value: H_100 has this 9-digit leading decimal expansion
  CHECK(forward.to_double() == doctest::Approx(5.187377518).epsilon(1e-9));
  CHECK(forward.denominator() % 97 == 0);  // primes in (50, 100] survive in the denominator
}

TEST_CASE("gaussian rational arithmetic") {
  GaussianRational i = GaussianRational::i();
  CHECK(i * i == GaussianRational(Rational(-1)));
  GaussianRational z(Rational(1, 2), Rational(1));
  CHECK(z + z.conj() == GaussianRational(Rational(1)));
  CHECK(z * z.conj() == GaussianRational(Rational(5, 4)));  // |1/2 + i|^2
  CHECK(z * z.inv() == GaussianRational(Rational(1)));
  CHECK_THROWS_AS(GaussianRational().inv(), std::domain_error);
}

TEST_CASE("field_add examples") {
  FieldElement x = field_from(GaussianRational(Rational(2, 3), Rational(1)));
  CHECK(FieldElement() + x == x);

  FieldElement a = field_from(GaussianRational(Rational(1, 2), Rational(1)));
  FieldElement b = field_from(GaussianRational(Rational(1, 2), Rational(-1)));
  CHECK(a + b == field_from(1));

  // pi/(pi+1) + 1/(pi+1) = 1
  PiPoly pi = PiPoly::variable();
  PiPoly pi1 = pi + PiPoly::one();
  CHECK(FieldElement(pi, pi1) + FieldElement(PiPoly::one(), pi1) == field_from(1));
}

TEST_CASE("field_mul examples") {
  FieldElement tip = field_two_i_pi(Rational(1));
  FieldElement m4pi2 = tip * tip;  // (2 i pi)^2 = -4 pi^2
  CHECK(m4pi2 ==
        FieldElement(PiPoly::monomial(GaussianRational(Rational(-4)), 2), PiPoly::one()));

  // x * inv(x) = 1 for x = (3 pi^2 - i)/(pi + 2)
  PiPoly num = PiPoly::monomial(GaussianRational(Rational(3)), 2) +
               PiPoly::monomial(GaussianRational(Rational(0), Rational(-1)), 0);
  PiPoly den = PiPoly::variable() + PiPoly::monomial(GaussianRational(Rational(2)), 0);
  FieldElement x(num, den);
  CHECK(x * x.inv() == field_from(1));

  FieldElement a = field_from(GaussianRational(Rational(1, 2), Rational(1)));
  FieldElement b = field_from(GaussianRational(Rational(1, 2), Rational(-1)));
  CHECK(a * b == field_from(GaussianRational(Rational(5, 4))));
}

TEST_CASE("field_inv examples") {
  CHECK(field_from(1).inv() == field_from(1));

  // inv(2 i pi) = -i/(2 pi): numerator -i/2 * pi^0, denominator monic pi
  FieldElement inv2ip = field_two_i_pi(Rational(1)).inv();
  FieldElement expected(PiPoly::monomial(GaussianRational(Rational(0), Rational(-1, 2)), 0),
                        PiPoly::variable());
  CHECK(inv2ip == expected);
  CHECK(field_two_i_pi(Rational(1)) * inv2ip == field_from(1));

  CHECK_THROWS_AS(FieldElement().inv(), std::domain_error);
}

TEST_CASE("field_to_complex examples") {
  double pi_a = 3.14159265358979;
  std::complex<double> z = field_to_complex(field_two_i_pi(Rational(1)), pi_a);
  CHECK(z.real() == doctest::Approx(0.0));
  CHECK(z.imag() == doctest::Approx(6.2831853).epsilon(1e-7));

  CHECK(field_to_complex(field_from(1), pi_a) == std::complex<double>(1.0, 0.0));

  // pi^2/pi reduces to pi before evaluation
  FieldElement ratio(PiPoly::monomial(GaussianRational(Rational(1)), 2), PiPoly::variable());
  CHECK(ratio.den() == PiPoly::one());  // cancelled at construction
  CHECK(field_to_complex(ratio, pi_a).real() == doctest::Approx(3.14159265).epsilon(1e-8));
}

TEST_CASE("canonical form: monic denominator, coprime, idempotent") {
  std::mt19937_64 rng(101);
  for (int it = 0; it < 200; ++it) {
    FieldElement x = testgen::rand_field(rng, 3);
    if (x.den().is_zero()) continue;
    // leading denominator coefficient is exactly 1
    CHECK(x.den().coeffs().back() == GaussianRational(Rational(1)));
    // re-normalizing an already canonical value is the identity, bitwise
    FieldElement again(x.num(), x.den());
    CHECK(again.num().coeffs() == x.num().coeffs());
    CHECK(again.den().coeffs() == x.den().coeffs());
    // multiplying num and den by a common factor reduces back to x
    PiPoly f = testgen::rand_pipoly_nonzero(rng, 2);
    CHECK(FieldElement(x.num() * f, x.den() * f) == x);
  }
}

TEST_CASE("ring axioms on 10^4 random triples") {
  std::mt19937_64 rng(102);
  for (int it = 0; it < 10000; ++it) {
    FieldElement a = testgen::rand_field(rng, 1);
    FieldElement b = testgen::rand_field(rng, 1);
    FieldElement c = testgen::rand_field(rng, 1);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("division errors") {
  CHECK_THROWS_AS(field_from(1) / FieldElement(), std::domain_error);
  CHECK_THROWS_AS(FieldElement(PiPoly::one(), PiPoly()), std::domain_error);
}

}  // TEST_SUITE
