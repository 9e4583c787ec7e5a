#pragma once

// Deterministic random generators shared by the test suites and the
// acceptance runner.

#include <random>
#include <vector>

#include "perioctrl/exactfield.hpp"
#include "perioctrl/multipoly.hpp"
#include "perioctrl/polymatrix.hpp"
#include "perioctrl/unipoly.hpp"

namespace testgen {

using namespace perioctrl;

inline Rational rand_rational(std::mt19937_64& rng, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> num(lo, hi), den(1, 3);
  return Rational(num(rng), den(rng));
}

inline GaussianRational rand_gaussian(std::mt19937_64& rng, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> c(lo, hi);
  return GaussianRational(Rational(c(rng)), Rational(c(rng)));
}

inline PiPoly rand_pipoly(std::mt19937_64& rng, int maxdeg) {
  std::uniform_int_distribution<int> deg(0, maxdeg);
  PiPoly p;
  int d = deg(rng);
  for (int k = 0; k <= d; ++k)
    p = p + PiPoly::monomial(rand_gaussian(rng), static_cast<std::size_t>(k));
  return p;
}

inline PiPoly rand_pipoly_nonzero(std::mt19937_64& rng, int maxdeg) {
  for (;;) {
    PiPoly p = rand_pipoly(rng, maxdeg);
    if (!p.is_zero()) return p;
  }
}

inline FieldElement rand_field(std::mt19937_64& rng, int maxdeg = 2) {
  return FieldElement(rand_pipoly(rng, maxdeg), rand_pipoly_nonzero(rng, maxdeg));
}

inline FieldElement rand_field_nonzero(std::mt19937_64& rng, int maxdeg = 2) {
  for (;;) {
    FieldElement x = rand_field(rng, maxdeg);
    if (!x.is_zero()) return x;
  }
}

inline UniPoly rand_unipoly(std::mt19937_64& rng, int maxdeg, int coeff_pi_deg = 1) {
  std::uniform_int_distribution<int> deg(0, maxdeg);
  UniPoly p;
  int d = deg(rng);
  for (int k = 0; k <= d; ++k) {
    FieldElement c(rand_pipoly(rng, coeff_pi_deg), PiPoly::one());
    p = p + UniPoly::monomial(c, static_cast<std::size_t>(k));
  }
  return p;
}

inline UniPoly rand_unipoly_nonzero(std::mt19937_64& rng, int maxdeg, int coeff_pi_deg = 1) {
  for (;;) {
    UniPoly p = rand_unipoly(rng, maxdeg, coeff_pi_deg);
    if (!p.is_zero()) return p;
  }
}

inline UniPolyMatrix rand_unipoly_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n,
                                         int maxdeg) {
  UniPolyMatrix M(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) M.at(i, j) = rand_unipoly(rng, maxdeg);
  return M;
}

/// Random entry in x_1..x_d and t: a handful of terms of total degree <= 3,
/// coefficients in {-3..3} + i{-3..3}. Layout matches the parser: x_k at
/// index k-1, t at index d.
inline MultiPoly rand_entry(std::mt19937_64& rng, std::size_t d) {
  MultiPoly p(d + 1);
  std::uniform_int_distribution<int> nterms(0, 4), expo(0, 3);
  int terms = nterms(rng);
  for (int t = 0; t < terms; ++t) {
    MultiPoly::ExpVec e(d + 1, 0);
    int budget = 3;
    for (std::size_t k = 0; k < d; ++k) {
      int g = expo(rng) % (budget + 1);
      e[k] = static_cast<unsigned>(g);
      budget -= g;
    }
    e[d] = static_cast<unsigned>(expo(rng) % (budget + 1));
    p.add_term(e, rand_gaussian(rng));
  }
  return p;
}

/// Random system with d <= 2, m,n <= 3, entry total degree <= 3.
inline MultiPolyMatrix rand_system(std::mt19937_64& rng, std::size_t d) {
  std::uniform_int_distribution<std::size_t> dim(1, 3);
  MultiPolyMatrix M(dim(rng), dim(rng), d);
  for (std::size_t i = 0; i < M.rows; ++i)
    for (std::size_t j = 0; j < M.cols; ++j) M.at(i, j) = rand_entry(rng, d);
  return M;
}

/// Random unimodular matrix: a product of `steps` elementary operations
/// (row swaps, scaling by a nonzero constant, adding a polynomial multiple).
inline UniPolyMatrix rand_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 5) {
  UniPolyMatrix W = UniPolyMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t a = idx(rng), b = idx(rng);
    switch (kind(rng)) {
      case 0:
        for (std::size_t j = 0; j < n; ++j) std::swap(W.at(a, j), W.at(b, j));
        break;
      case 1: {
        FieldElement c = rand_field_nonzero(rng, 1);
        for (std::size_t j = 0; j < n; ++j) W.at(a, j) = W.at(a, j) * unipoly_const(c);
        break;
      }
      default: {
        if (a == b) break;
        UniPoly p = rand_unipoly(rng, 2);
        for (std::size_t j = 0; j < n; ++j) W.at(a, j) = W.at(a, j) + p * W.at(b, j);
        break;
      }
    }
  }
  return W;
}

}  // namespace testgen
