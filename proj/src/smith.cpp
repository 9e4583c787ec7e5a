#include "perioctrl/smith.hpp"

#include <stdexcept>

namespace perioctrl {

namespace {

/// Elimination state: S is reduced in place while U and V accumulate the
/// inverses of the applied elementary operations, so M = U * S * V holds
/// after every step.
struct Elimination {
  UniPolyMatrix S;
  UniPolyMatrix U;
  UniPolyMatrix V;

  explicit Elimination(const UniPolyMatrix& M)
      : S(M), U(UniPolyMatrix::identity(M.rows)), V(UniPolyMatrix::identity(M.cols)) {}

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < S.cols; ++j) std::swap(S.at(a, j), S.at(b, j));
    for (std::size_t i = 0; i < U.rows; ++i) std::swap(U.at(i, a), U.at(i, b));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < S.rows; ++i) std::swap(S.at(i, a), S.at(i, b));
    for (std::size_t j = 0; j < V.cols; ++j) std::swap(V.at(a, j), V.at(b, j));
  }
  /// row a += p * row b
  void add_row(std::size_t a, std::size_t b, const UniPoly& p) {
    if (p.is_zero()) return;
    for (std::size_t j = 0; j < S.cols; ++j) S.at(a, j) += p * S.at(b, j);
    for (std::size_t i = 0; i < U.rows; ++i) U.at(i, b) -= p * U.at(i, a);
  }
  /// col a += p * col b
  void add_col(std::size_t a, std::size_t b, const UniPoly& p) {
    if (p.is_zero()) return;
    for (std::size_t i = 0; i < S.rows; ++i) S.at(i, a) += p * S.at(i, b);
    for (std::size_t j = 0; j < V.cols; ++j) V.at(b, j) -= p * V.at(a, j);
  }
  /// row a *= c (c a nonzero field constant)
  void scale_row(std::size_t a, const FieldElement& c) {
    FieldElement cinv = c.inv();
    for (std::size_t j = 0; j < S.cols; ++j) S.at(a, j) = S.at(a, j).scaled(c);
    for (std::size_t i = 0; i < U.rows; ++i) U.at(i, a) = U.at(i, a).scaled(cinv);
  }
  /// col a *= c (c a nonzero field constant)
  void scale_col(std::size_t a, const FieldElement& c) {
    FieldElement cinv = c.inv();
    for (std::size_t i = 0; i < S.rows; ++i) S.at(i, a) = S.at(i, a).scaled(c);
    for (std::size_t j = 0; j < V.cols; ++j) V.at(a, j) = V.at(a, j).scaled(cinv);
  }
  /// (row a, row b) <- (s*row a + t*row b, qa*row b - qb*row a).
  /// Caller guarantees s*qa + t*qb = c, a nonzero constant: the transform is
  /// unimodular with determinant c, and its inverse carries the 1/c. Keeping
  /// the polynomial factors denominator-free on the S side and paying the
  /// single constant division on the U side is what keeps this op cheap.
  void combine_rows(std::size_t a, std::size_t b, const UniPoly& s, const UniPoly& t,
                    const UniPoly& qa, const UniPoly& qb, const FieldElement& c) {
    FieldElement cinv = c.inv();
    for (std::size_t j = 0; j < S.cols; ++j) {
      UniPoly na = s * S.at(a, j) + t * S.at(b, j);
      UniPoly nb = qa * S.at(b, j) - qb * S.at(a, j);
      S.at(a, j) = std::move(na);
      S.at(b, j) = std::move(nb);
    }
    for (std::size_t i = 0; i < U.rows; ++i) {
      UniPoly na = (qa * U.at(i, a) + qb * U.at(i, b)).scaled(cinv);
      UniPoly nb = (s * U.at(i, b) - t * U.at(i, a)).scaled(cinv);
      U.at(i, a) = std::move(na);
      U.at(i, b) = std::move(nb);
    }
  }
  /// (col a, col b) <- (s*col a + t*col b, qa*col b - qb*col a).
  void combine_cols(std::size_t a, std::size_t b, const UniPoly& s, const UniPoly& t,
                    const UniPoly& qa, const UniPoly& qb, const FieldElement& c) {
    FieldElement cinv = c.inv();
    for (std::size_t i = 0; i < S.rows; ++i) {
      UniPoly na = s * S.at(i, a) + t * S.at(i, b);
      UniPoly nb = qa * S.at(i, b) - qb * S.at(i, a);
      S.at(i, a) = std::move(na);
      S.at(i, b) = std::move(nb);
    }
    for (std::size_t j = 0; j < V.cols; ++j) {
      UniPoly na = (qa * V.at(a, j) + qb * V.at(b, j)).scaled(cinv);
      UniPoly nb = (s * V.at(b, j) - t * V.at(a, j)).scaled(cinv);
      V.at(a, j) = std::move(na);
      V.at(b, j) = std::move(nb);
    }
  }
};

PiPoly pipoly_lcm(const PiPoly& a, const PiPoly& b) {
  if (a.is_one()) return b.made_monic();
  if (b.is_one()) return a.made_monic();
  PiPoly g = PiPoly::gcd(a, b);
  return (a * PiPoly::divmod(b, g).first).made_monic();
}

/// Constant that clears every denominator and strips the common numerator
/// content from the listed polynomials; 1 when nothing to do. Keeping the
/// working rows and columns in this primitive form is what stops the
/// coefficient swell of repeated fraction reduction during elimination.
FieldElement primitive_scale(const std::vector<const UniPoly*>& entries) {
  PiPoly D = PiPoly::one();
  bool any = false;
  for (const UniPoly* p : entries)
    for (const FieldElement& c : p->coeffs()) {
      if (c.is_zero()) continue;
      any = true;
      if (!c.den().is_one()) D = pipoly_lcm(D, c.den());
    }
  if (!any) return FieldElement(1);
  PiPoly G;
  for (const UniPoly* p : entries) {
    for (const FieldElement& c : p->coeffs()) {
      if (c.is_zero()) continue;
      PiPoly num = c.den().is_one() ? c.num() : c.num() * PiPoly::divmod(D, c.den()).first;
      G = G.is_zero() ? num.made_monic() : PiPoly::gcd(G, num);
      if (G.is_one()) break;
    }
    if (G.is_one() && D.is_one()) return FieldElement(1);
  }
  return FieldElement(D, G);
}

/// Primitive-scales row i, looking at entries in columns k and beyond.
void normalize_row(Elimination& e, std::size_t i, std::size_t k) {
  std::vector<const UniPoly*> es;
  for (std::size_t j = k; j < e.S.cols; ++j)
    if (!e.S.at(i, j).is_zero()) es.push_back(&e.S.at(i, j));
  if (es.empty()) return;
  FieldElement c = primitive_scale(es);
  if (!c.is_one()) e.scale_row(i, c);
}

/// Primitive-scales column j, looking at entries in rows k and beyond.
void normalize_col(Elimination& e, std::size_t j, std::size_t k) {
  std::vector<const UniPoly*> es;
  for (std::size_t i = k; i < e.S.rows; ++i)
    if (!e.S.at(i, j).is_zero()) es.push_back(&e.S.at(i, j));
  if (es.empty()) return;
  FieldElement c = primitive_scale(es);
  if (!c.is_one()) e.scale_col(j, c);
}

/// Normalizes the working submatrix (rows and columns k and beyond).
void normalize_block(Elimination& e, std::size_t k) {
  for (std::size_t i = k; i < e.S.rows; ++i) normalize_row(e, i, k);
  for (std::size_t j = k; j < e.S.cols; ++j) normalize_col(e, j, k);
}

}  // namespace

SmithDecomposition smith_form(const UniPolyMatrix& M) {
  Elimination e(M);
  const std::size_t m = M.rows, n = M.cols;
  std::size_t k = 0;

  for (; k < std::min(m, n); ++k) {
    for (;;) {
      normalize_block(e, k);
      // Pivot: least tau-degree nonzero entry of the working submatrix,
      // ties broken by smallest (row, col).
      std::size_t pi = m, pj = n;
      int pdeg = -1;
      for (std::size_t i = k; i < m; ++i)
        for (std::size_t j = k; j < n; ++j) {
          const UniPoly& x = e.S.at(i, j);
          if (x.is_zero()) continue;
          int dg = *x.degree();
          if (pdeg < 0 || dg < pdeg) {
            pdeg = dg;
            pi = i;
            pj = j;
          }
        }
      if (pdeg < 0) goto done;  // submatrix is zero
      e.swap_rows(k, pi);
      e.swap_cols(k, pj);

      // Column pass: divisible entries fall to a single row operation, and
      // anything else is killed in one extended-gcd transform that replaces
      // the pivot by the gcd. Running the pair Euclid separately keeps the
      // remainder cascade off the full rows, whose tails would otherwise be
      // dragged through every intermediate step.
      for (std::size_t i = k + 1; i < m; ++i) {
        if (e.S.at(i, k).is_zero()) continue;
        auto [q, r] = poly_divmod(e.S.at(i, k), e.S.at(k, k));
        if (r.is_zero()) {
          e.add_row(i, k, -q);
          continue;
        }
        ExtendedGcd x = extended_gcd(e.S.at(k, k), e.S.at(i, k));
        UniPoly qa = poly_divmod(e.S.at(k, k), x.g).first;
        UniPoly qb = poly_divmod(e.S.at(i, k), x.g).first;
        e.combine_rows(k, i, x.s, x.t, qa, qb, x.c);
        normalize_row(e, k, k);
        normalize_row(e, i, k);
      }
      // Row pass; a gcd transform here refills column k below the pivot, so
      // the column pass has to run again.
      bool refilled = false;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (e.S.at(k, j).is_zero()) continue;
        auto [q, r] = poly_divmod(e.S.at(k, j), e.S.at(k, k));
        if (r.is_zero()) {
          e.add_col(j, k, -q);
          continue;
        }
        ExtendedGcd x = extended_gcd(e.S.at(k, k), e.S.at(k, j));
        UniPoly qa = poly_divmod(e.S.at(k, k), x.g).first;
        UniPoly qb = poly_divmod(e.S.at(k, j), x.g).first;
        e.combine_cols(k, j, x.s, x.t, qa, qb, x.c);
        normalize_col(e, k, k);
        normalize_col(e, j, k);
        refilled = true;
      }
      if (refilled) continue;

      // The pivot must divide the rest of the submatrix for the divisibility
      // chain; fold a violating row into row k and keep reducing.
      bool fixed = true;
      for (std::size_t i = k + 1; i < m && fixed; ++i)
        for (std::size_t j = k + 1; j < n && fixed; ++j) {
          if (e.S.at(i, j).is_zero()) continue;
          if (!poly_divides(e.S.at(k, k), e.S.at(i, j))) {
            e.add_row(k, i, UniPoly::one());
            fixed = false;
          }
        }
      if (fixed) break;
    }
  }

done:
  // Monic normalization happens once, at the end: scaling pivot rows during
  // the elimination makes every later operand a bulkier reduced fraction and
  // the coefficient swell compounds across stages. Here S is diagonal, so
  // each scaling touches one entry of S and one column of U.
  for (std::size_t j = 0; j < k; ++j) {
    const FieldElement& lead = e.S.at(j, j).leading();
    if (!lead.is_one()) e.scale_row(j, lead.inv());
  }

  SmithDecomposition out;
  out.rank = k;
  out.U = std::move(e.U);
  out.V = std::move(e.V);
  out.Sigma = UniPolyMatrix(m, n);
  for (std::size_t j = 0; j < k; ++j) {
    out.Sigma.at(j, j) = e.S.at(j, j);
    out.invariant_factors.push_back(e.S.at(j, j));
  }
  return out;
}

UniPoly determinant(const UniPolyMatrix& M) {
  if (M.rows != M.cols) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = M.rows;
  if (n == 0) return UniPoly::one();
  if (n == 1) return M.at(0, 0);
  UniPoly det;
  for (std::size_t j = 0; j < n; ++j) {
    if (M.at(0, j).is_zero()) continue;
    UniPolyMatrix sub(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        sub.at(i - 1, cc++) = M.at(i, c);
      }
    }
    UniPoly term = M.at(0, j) * determinant(sub);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

UniPolyMatrix unimodular_inverse(const UniPolyMatrix& V) {
  if (V.rows != V.cols) throw std::invalid_argument("unimodular_inverse: matrix not square");
  const std::size_t n = V.rows;
  UniPoly det = determinant(V);
  if (det.is_zero() || *det.degree() != 0)
    throw std::invalid_argument("unimodular_inverse: determinant is not a nonzero constant");
  FieldElement dinv = det.coeff(0).inv();

  UniPolyMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // Cofactor of (j, i), transposed into (i, j).
      UniPolyMatrix sub(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          sub.at(rr, cc++) = V.at(r, c);
        }
        ++rr;
      }
      UniPoly cof = determinant(sub);
      if ((i + j) % 2 == 1) cof = -cof;
      inv.at(i, j) = cof.scaled(dinv);
    }
  return inv;
}

UniPolyMatrix kernel_representation(const UniPolyMatrix& M) {
  SmithDecomposition s = smith_form(M);
  UniPolyMatrix Vinv = unimodular_inverse(s.V);
  const std::size_t n = M.cols, r = s.rank;
  UniPolyMatrix N(n, n - r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < n - r; ++c) N.at(i, c) = Vinv.at(i, r + c);
  return N;
}

}  // namespace perioctrl
