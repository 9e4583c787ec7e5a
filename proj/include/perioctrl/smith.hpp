#pragma once

#include <vector>

#include "perioctrl/polymatrix.hpp"

namespace perioctrl {

/// M = U * Sigma * V with U, V unimodular over F[tau] and Sigma diagonal
/// carrying the monic invariant factors d_1 | d_2 | ... | d_r.
struct SmithDecomposition {
  UniPolyMatrix U;      // m x m
  UniPolyMatrix Sigma;  // m x n, diagonal
  UniPolyMatrix V;      // n x n
  std::vector<UniPoly> invariant_factors;
  std::size_t rank = 0;
};

SmithDecomposition smith_form(const UniPolyMatrix& M);

/// Exact determinant by cofactor expansion. Throws on non-square input.
UniPoly determinant(const UniPolyMatrix& M);

/// Inverse of a matrix with constant nonzero determinant; the result has
/// polynomial entries (adjugate over the constant determinant). Throws when
/// the determinant has positive tau-degree or vanishes.
UniPolyMatrix unimodular_inverse(const UniPolyMatrix& V);

/// N with M * N = 0, full column rank n - rank(M); the last columns of
/// V^{-1}. Full-rank input yields a matrix with zero columns.
UniPolyMatrix kernel_representation(const UniPolyMatrix& M);

}  // namespace perioctrl
