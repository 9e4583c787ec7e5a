#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "perioctrl/multipoly.hpp"
#include "perioctrl/rational.hpp"
#include "perioctrl/unipoly.hpp"

namespace perioctrl {

/// Matrix of multivariate polynomials in (x1..xd, t); the parsed system M.
struct MultiPolyMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t d = 0;
  std::vector<MultiPoly> entries;  // row-major, each with nvars = d + 1

  MultiPolyMatrix() = default;
  MultiPolyMatrix(std::size_t m, std::size_t n, std::size_t dim)
      : rows(m), cols(n), d(dim), entries(m * n, MultiPoly(dim + 1)) {}

  MultiPoly& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const MultiPoly& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  bool operator==(const MultiPolyMatrix& o) const {
    return rows == o.rows && cols == o.cols && d == o.d && entries == o.entries;
  }
};

/// Matrix over F[tau]; the per-frequency object M(2*pi*i*v, tau).
struct UniPolyMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<UniPoly> entries;  // row-major

  UniPolyMatrix() = default;
  UniPolyMatrix(std::size_t m, std::size_t n) : rows(m), cols(n), entries(m * n) {}

  static UniPolyMatrix identity(std::size_t n);

  UniPoly& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const UniPoly& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  bool is_zero() const;
  bool operator==(const UniPolyMatrix& o) const {
    return rows == o.rows && cols == o.cols && entries == o.entries;
  }
};

UniPolyMatrix matmul(const UniPolyMatrix& a, const UniPolyMatrix& b);

/// The period matrix A (rows are the lattice periods) with its exact inverse.
class FrequencyLattice {
public:
  explicit FrequencyLattice(std::vector<std::vector<Rational>> A);

  std::size_t d() const { return d_; }
  const std::vector<std::vector<Rational>>& A() const { return A_; }
  const std::vector<std::vector<Rational>>& A_inv() const { return A_inv_; }

private:
  std::size_t d_;
  std::vector<std::vector<Rational>> A_;
  std::vector<std::vector<Rational>> A_inv_;
};

/// One lattice frequency v = A^{-1} n together with its integer mode n.
struct Frequency {
  std::vector<Rational> v;
  std::vector<long> n;
};

Frequency frequency_from_mode(const FrequencyLattice& L, const std::vector<long>& n);

/// All modes n with max-norm at most B, in lexicographic order.
std::vector<std::vector<long>> modes_in_box(std::size_t d, long B);

/// Substitution x_k -> 2*i*pi*v_k; t becomes the polynomial variable tau.
UniPolyMatrix substitute_frequency(const MultiPolyMatrix& M, const Frequency& f);

/// Entrywise floating evaluation at x = 2*pi*i*v (numeric), t = t.
std::vector<std::vector<std::complex<double>>> numeric_eval(const MultiPolyMatrix& M,
                                                            const Frequency& f,
                                                            std::complex<double> t,
                                                            double pi_approx);

}  // namespace perioctrl
