#include <doctest.h>

#include <random>
#include <vector>

#include "perioctrl/smith.hpp"
#include "support/gen.hpp"

using namespace perioctrl;
using namespace testgen;

namespace {

UniPoly tau() { return unipoly_tau(); }
UniPoly k(long v) { return unipoly_const(field_from(v)); }

FieldElement four_pi_sq() {
  return FieldElement(PiPoly::monomial(GaussianRational(Rational(4)), 2));
}

UniPolyMatrix submatrix(const UniPolyMatrix& M, const std::vector<std::size_t>& ri,
                        const std::vector<std::size_t>& ci) {
  UniPolyMatrix S(ri.size(), ci.size());
  for (std::size_t i = 0; i < ri.size(); ++i)
    for (std::size_t j = 0; j < ci.size(); ++j) S.at(i, j) = M.at(ri[i], ci[j]);
  return S;
}

void combinations(std::size_t n, std::size_t j, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> idx(j);
  for (std::size_t i = 0; i < j; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    std::size_t p = j;
    while (p-- > 0) {
      if (idx[p] + (j - p) < n) {
        ++idx[p];
        for (std::size_t q = p + 1; q < j; ++q) idx[q] = idx[q - 1] + 1;
        break;
      }
      if (p == 0) return;
    }
  }
}

/// Monic gcd of all j x j minors; zero polynomial when all minors vanish.
/// Brute force by enumeration -- the determinantal-divisor oracle.
UniPoly minor_gcd(const UniPolyMatrix& M, std::size_t j) {
  std::vector<std::vector<std::size_t>> rsets, csets;
  combinations(M.rows, j, rsets);
  combinations(M.cols, j, csets);
  UniPoly g;
  for (const auto& ri : rsets)
    for (const auto& ci : csets) {
      UniPoly m = determinant(submatrix(M, ri, ci));
      if (m.is_zero()) continue;
      g = g.is_zero() ? m.made_monic() : UniPoly::gcd(g, m);
      if (!g.is_zero() && g.is_one()) return g;  // cannot shrink further
    }
  return g;
}

void check_decomposition(const UniPolyMatrix& M, const SmithDecomposition& S) {
  // exact reconstruction
  CHECK(matmul(matmul(S.U, S.Sigma), S.V) == M);
  // unimodular factors: nonzero constant determinants
  UniPoly du = determinant(S.U), dv = determinant(S.V);
  REQUIRE(!du.is_zero());
  REQUIRE(!dv.is_zero());
  CHECK(du.degree() == 0);
  CHECK(dv.degree() == 0);
  // Sigma carries the monic invariant factors on the diagonal, zeros elsewhere
  REQUIRE(S.invariant_factors.size() == S.rank);
  for (std::size_t i = 0; i < S.Sigma.rows; ++i)
    for (std::size_t j = 0; j < S.Sigma.cols; ++j) {
      if (i == j && i < S.rank)
        CHECK(S.Sigma.at(i, j) == S.invariant_factors[i]);
      else
        CHECK(S.Sigma.at(i, j).is_zero());
    }
  for (const auto& d : S.invariant_factors) {
    REQUIRE(!d.is_zero());
    CHECK(d.leading().is_one());
  }
  // divisibility chain
  for (std::size_t i = 0; i + 1 < S.invariant_factors.size(); ++i)
    CHECK(UniPoly::divides(S.invariant_factors[i], S.invariant_factors[i + 1]));
}

}  // namespace

TEST_SUITE("smith") {

TEST_CASE("smith_form examples") {
  UniPolyMatrix A(1, 1);
  A.at(0, 0) = tau();
  auto S = smith_form(A);
  CHECK(S.rank == 1);
  REQUIRE(S.invariant_factors.size() == 1);
  CHECK(S.invariant_factors[0] == tau());
  CHECK(S.U == UniPolyMatrix::identity(1));
  CHECK(S.V == UniPolyMatrix::identity(1));
  check_decomposition(A, S);

  // diag(tau, tau^2): the minor-gcd oracle pins both factors
  UniPolyMatrix D(2, 2);
  D.at(0, 0) = tau();
  D.at(1, 1) = tau() * tau();
  auto SD = smith_form(D);
  CHECK(SD.rank == 2);
  REQUIRE(SD.invariant_factors.size() == 2);
  CHECK(SD.invariant_factors[0] == tau());
  CHECK(SD.invariant_factors[1] == tau() * tau());
  CHECK(minor_gcd(D, 1) == tau());                  // d1
  CHECK(minor_gcd(D, 2) == tau() * tau() * tau());  // d1 * d2
  check_decomposition(D, SD);

  // unit entry forces d1 = 1
  UniPolyMatrix R(1, 2);
  R.at(0, 0) = tau() + unipoly_const(four_pi_sq());
  R.at(0, 1) = k(-1);
  auto SR = smith_form(R);
  CHECK(SR.rank == 1);
  REQUIRE(SR.invariant_factors.size() == 1);
  CHECK(SR.invariant_factors[0] == k(1));
  check_decomposition(R, SR);

  // zero matrix: rank 0, empty factor list
  UniPolyMatrix Z(2, 3);
  auto SZ = smith_form(Z);
  CHECK(SZ.rank == 0);
  CHECK(SZ.invariant_factors.empty());
  check_decomposition(Z, SZ);
}

TEST_CASE("determinant examples") {
  CHECK(determinant(UniPolyMatrix::identity(3)) == k(1));

  UniPolyMatrix T(2, 2);
  T.at(0, 0) = tau();
  T.at(0, 1) = k(1);
  T.at(1, 1) = tau();
  CHECK(determinant(T) == tau() * tau());

  CHECK_THROWS_AS(determinant(UniPolyMatrix(2, 3)), std::invalid_argument);

  // multiplicativity oracle: det U * det V * prod(d_k) = +-det M on square M
  std::mt19937_64 rng(501);
  for (int trial = 0; trial < 40; ++trial) {
    UniPolyMatrix M = rand_unipoly_matrix(rng, 3, 3, 2);
    auto S = smith_form(M);
    UniPoly lhs = determinant(S.U) * determinant(S.V);
    for (const auto& d : S.invariant_factors) lhs = lhs * d;
    UniPoly det = determinant(M);
    if (det.is_zero()) {
      CHECK(S.rank < 3);
      continue;
    }
    CHECK((lhs == det || lhs == -det));
  }
}

TEST_CASE("unimodular_inverse examples") {
  CHECK(unimodular_inverse(UniPolyMatrix::identity(4)) == UniPolyMatrix::identity(4));

  UniPolyMatrix E(2, 2);
  E.at(0, 0) = k(1);
  E.at(0, 1) = tau();
  E.at(1, 1) = k(1);
  UniPolyMatrix Einv = unimodular_inverse(E);
  CHECK(Einv.at(0, 0) == k(1));
  CHECK(Einv.at(0, 1) == -tau());
  CHECK(Einv.at(1, 0).is_zero());
  CHECK(Einv.at(1, 1) == k(1));

  std::mt19937_64 rng(502);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 2 + rng() % 3;
    UniPolyMatrix W = rand_unimodular(rng, n, 5);
    UniPolyMatrix Winv = unimodular_inverse(W);
    CHECK(matmul(W, Winv) == UniPolyMatrix::identity(n));
    CHECK(matmul(Winv, W) == UniPolyMatrix::identity(n));
  }

  // positive-degree determinant is rejected
  UniPolyMatrix bad(2, 2);
  bad.at(0, 0) = tau();
  bad.at(1, 1) = k(1);
  CHECK_THROWS_AS(unimodular_inverse(bad), std::invalid_argument);
  // singular too
  UniPolyMatrix sing(2, 2);
  sing.at(0, 0) = k(1);
  sing.at(0, 1) = k(1);
  sing.at(1, 0) = k(1);
  sing.at(1, 1) = k(1);
  CHECK_THROWS_AS(unimodular_inverse(sing), std::invalid_argument);
  CHECK_THROWS_AS(unimodular_inverse(UniPolyMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("kernel_representation examples") {
  UniPolyMatrix M(1, 2);
  M.at(0, 0) = tau();
  M.at(0, 1) = k(-1);
  UniPolyMatrix N = kernel_representation(M);
  REQUIRE(N.rows == 2);
  REQUIRE(N.cols == 1);
  CHECK(N.at(0, 0) == k(1));
  CHECK(N.at(1, 0) == tau());
  CHECK(matmul(M, N).is_zero());

  UniPolyMatrix KI = kernel_representation(UniPolyMatrix::identity(3));
  CHECK(KI.rows == 3);
  CHECK(KI.cols == 0);

  UniPolyMatrix KZ = kernel_representation(UniPolyMatrix(1, 2));
  CHECK(KZ == UniPolyMatrix::identity(2));
}

TEST_CASE("kernel columns annihilate M and are independent, random corpus") {
  std::mt19937_64 rng(503);
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t m = 1 + rng() % 3, n = 1 + rng() % 3;
    UniPolyMatrix M = rand_unipoly_matrix(rng, m, n, 2);
    auto S = smith_form(M);
    UniPolyMatrix N = kernel_representation(M);
    REQUIRE(N.rows == n);
    REQUIRE(N.cols == n - S.rank);
    CHECK(matmul(M, N).is_zero());
    if (N.cols > 0) CHECK(smith_form(N).rank == N.cols);  // full column rank over F(tau)
  }
}

TEST_CASE("reconstruction, unimodularity, divisibility: 500 random matrices") {
  std::mt19937_64 rng(504);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t m = 1 + rng() % 4, n = 1 + rng() % 4;
    int deg = 1 + static_cast<int>(rng() % 3);
    UniPolyMatrix M = rand_unipoly_matrix(rng, m, n, deg);
    auto S = smith_form(M);
    CHECK(S.rank <= std::min(m, n));
    check_decomposition(M, S);
  }
}

TEST_CASE("determinantal-divisor oracle on random small instances") {
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t m = 1 + rng() % 3, n = 1 + rng() % 3;
    UniPolyMatrix M = rand_unipoly_matrix(rng, m, n, 2);
    auto S = smith_form(M);
    UniPoly acc = k(1);
    for (std::size_t j = 1; j <= S.rank; ++j) {
      acc = acc * S.invariant_factors[j - 1];
      CHECK(minor_gcd(M, j) == acc.made_monic());
    }
    // one past the rank every minor vanishes
    if (S.rank < std::min(m, n)) CHECK(minor_gcd(M, S.rank + 1).is_zero());
  }
}

}  // TEST_SUITE
