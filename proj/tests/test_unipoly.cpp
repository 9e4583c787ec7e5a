#include <doctest.h>

#include <random>

#include "perioctrl/unipoly.hpp"
#include "support/gen.hpp"

using namespace perioctrl;

namespace {

UniPoly tau() { return unipoly_tau(); }
UniPoly k(long v) { return unipoly_const(field_from(v)); }

FieldElement four_pi_sq() {
  return FieldElement(PiPoly::monomial(GaussianRational(Rational(4)), 2), PiPoly::one());
}

}  // namespace

TEST_SUITE("unipoly") {

TEST_CASE("degree bookkeeping") {
  CHECK(!UniPoly().degree().has_value());  // zero polynomial: no integer degree
  CHECK(k(5).degree() == 0);
  CHECK((tau() * tau() + k(1)).degree() == 2);
}

TEST_CASE("poly_divmod examples") {
  UniPoly a = tau() * tau() - k(1);
  auto [q1, r1] = poly_divmod(a, tau() - k(1));
  CHECK(q1 == tau() + k(1));
  CHECK(r1.is_zero());

  auto [q2, r2] = poly_divmod(tau(), tau() * tau());
  CHECK(q2.is_zero());
  CHECK(r2 == tau());

  // (tau^2 + 4 pi^2) / (2 tau) = (tau/2, 4 pi^2); re-expand to confirm
  UniPoly b = tau() * tau() + unipoly_const(four_pi_sq());
  UniPoly two_tau = k(2) * tau();
  auto [q3, r3] = poly_divmod(b, two_tau);
  CHECK(q3 == unipoly_const(field_from(1) / field_from(2)) * tau());
  CHECK(r3 == unipoly_const(four_pi_sq()));
  CHECK(q3 * two_tau + r3 == b);

  CHECK_THROWS_AS(poly_divmod(a, UniPoly()), std::domain_error);
}

TEST_CASE("poly_gcd examples") {
  CHECK(poly_gcd(tau() * tau() - k(1), tau() - k(1)) == tau() - k(1));
  CHECK(poly_gcd(tau() + unipoly_const(four_pi_sq()), k(1)) == k(1));

  // gcd((tau + 2 i pi)^2, (tau + 2 i pi)(tau - 1)) = tau + 2 i pi
  UniPoly root = tau() + unipoly_const(field_two_i_pi(Rational(1)));
  UniPoly g = poly_gcd(root * root, root * (tau() - k(1)));
  CHECK(g == root);
  CHECK(poly_divmod(root * root, g).second.is_zero());
  CHECK(poly_divmod(root * (tau() - k(1)), g).second.is_zero());

  CHECK_THROWS_AS(poly_gcd(UniPoly(), UniPoly()), std::domain_error);
}

TEST_CASE("poly_derivative examples") {
  CHECK(poly_derivative(tau() * tau()) == k(2) * tau());
  CHECK(poly_derivative(k(7)).is_zero());
  UniPoly p = tau() * tau() * tau() + unipoly_const(four_pi_sq()) * tau();
  CHECK(poly_derivative(p) == k(3) * tau() * tau() + unipoly_const(four_pi_sq()));
}

TEST_CASE("poly_eval examples") {
  CHECK(poly_eval(tau() * tau() + k(1), FieldElement()) == field_from(1));

  FieldElement m4pi2 = field_from(0) - four_pi_sq();
  CHECK(poly_eval(tau() + unipoly_const(four_pi_sq()), m4pi2).is_zero());

  FieldElement pi = field_pi();
  FieldElement one_minus_pi = field_from(1) - pi;
  CHECK(poly_eval(tau() * tau() - unipoly_const(pi), field_from(1)) == one_minus_pi);
}

TEST_CASE("divmod property: a = q*b + r with deg r < deg b") {
  std::mt19937_64 rng(201);
  for (int it = 0; it < 300; ++it) {
    UniPoly a = testgen::rand_unipoly(rng, 8);
    UniPoly b = testgen::rand_unipoly_nonzero(rng, 8);
    auto [q, r] = poly_divmod(a, b);
    CHECK(q * b + r == a);
    if (!r.is_zero()) CHECK(*r.degree() < *b.degree());
  }
}

TEST_CASE("gcd properties: symmetry, divisibility, monic scaling") {
  std::mt19937_64 rng(202);
  int done = 0;
  while (done < 150) {
    UniPoly a = testgen::rand_unipoly(rng, 5);
    UniPoly b = testgen::rand_unipoly(rng, 5);
    if (a.is_zero() && b.is_zero()) continue;
    ++done;
    UniPoly g = poly_gcd(a, b);
    CHECK(g == poly_gcd(b, a));
    if (!a.is_zero()) CHECK(poly_divmod(a, g).second.is_zero());
    if (!b.is_zero()) CHECK(poly_divmod(b, g).second.is_zero());
    // monic: leading coefficient 1
    CHECK(g.coeffs().back() == field_from(1));

    UniPoly c = testgen::rand_unipoly_nonzero(rng, 3).made_monic();
    if (!(a * c).is_zero() || !(b * c).is_zero())
      CHECK(poly_gcd(a * c, b * c) == c * g);
  }
}

}  // TEST_SUITE
