#include "perioctrl/analyzer.hpp"

#include <functional>
#include <stdexcept>

#include "perioctrl/printer.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace perioctrl {

namespace {

/// Local cofactor determinant over F[tau]. Deliberately not shared with the
/// smith module: the two decision paths must stay independent above the
/// basic polynomial layer.
UniPoly minor_det(const UniPolyMatrix& M, const std::vector<std::size_t>& rows,
                  const std::vector<std::size_t>& cols) {
  const std::size_t n = rows.size();
  if (n == 0) return UniPoly::one();
  if (n == 1) return M.at(rows[0], cols[0]);
  UniPoly det;
  std::vector<std::size_t> subcols(cols.begin() + 1, cols.end());
  std::vector<std::size_t> subrows = rows;
  for (std::size_t k = 0; k < n; ++k) {
    const UniPoly& x = M.at(rows[k], cols[0]);
    if (!x.is_zero()) {
      subrows.clear();
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) subrows.push_back(rows[j]);
      UniPoly term = x * minor_det(M, subrows, subcols);
      det = (k % 2 == 0) ? det + term : det - term;
    }
  }
  return det;
}

void combinations(std::size_t n, std::size_t r, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(r);
  for (std::size_t k = 0; k < r; ++k) idx[k] = k;
  if (r > n) return;
  for (;;) {
    fn(idx);
    std::size_t k = r;
    while (k > 0) {
      --k;
      if (idx[k] < n - (r - k)) {
        ++idx[k];
        for (std::size_t j = k + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (k == 0) return;
    }
    if (r == 0) return;
  }
}

}  // namespace

ConstantRankResult constant_rank_test(const UniPolyMatrix& Mv) {
  const std::size_t m = Mv.rows, n = Mv.cols;

  // Rank over F(tau): Gaussian elimination with rational-function entries.
  std::vector<RatFunc> work(m * n);
  for (std::size_t k = 0; k < m * n; ++k) work[k] = RatFunc(Mv.entries[k]);
  auto at = [&](std::size_t i, std::size_t j) -> RatFunc& { return work[i * n + j]; };
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < m; ++col) {
    std::size_t piv = m;
    for (std::size_t i = r; i < m; ++i)
      if (!at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv == m) continue;
    if (piv != r)
      for (std::size_t j = col; j < n; ++j) std::swap(at(piv, j), at(r, j));
    RatFunc pinv = at(r, col).inv();
    for (std::size_t i = r + 1; i < m; ++i) {
      if (at(i, col).is_zero()) continue;
      RatFunc f = at(i, col) * pinv;
      for (std::size_t j = col; j < n; ++j) at(i, j) -= f * at(r, j);
    }
    ++r;
  }

  ConstantRankResult out;
  out.rank = r;
  if (r == 0) {
    out.constant = true;
    out.gcd_of_max_minors = UniPoly::one();
    return out;
  }

  // Monic gcd of every r x r minor; the rank is constant over all of C
  // exactly when no common root exists, i.e. the gcd is a unit.
  UniPoly g;
  combinations(m, r, [&](const std::vector<std::size_t>& rows) {
    combinations(n, r, [&](const std::vector<std::size_t>& cols) {
      UniPoly mm = minor_det(Mv, rows, cols);
      if (mm.is_zero()) return;
      g = g.is_zero() ? mm.made_monic() : poly_gcd(g, mm);
    });
  });
  out.gcd_of_max_minors = g;
  out.constant = *g.degree() == 0;
  return out;
}

TorsionResult torsion_test(const UniPolyMatrix& Mv) {
  SmithDecomposition s = smith_form(Mv);
  TorsionResult out;
  out.invariant_factors = s.invariant_factors;
  out.rank = s.rank;
  out.torsion_free = true;
  for (const UniPoly& d : s.invariant_factors)
    if (*d.degree() > 0) out.torsion_free = false;
  if (!out.torsion_free) {
    // The row of V paired with the last invariant factor is outside the row
    // module, and d_r multiplies it back in.
    TorsionWitness w;
    w.annihilator = s.invariant_factors.back();
    w.row.resize(Mv.cols);
    for (std::size_t j = 0; j < Mv.cols; ++j) w.row[j] = s.V.at(s.rank - 1, j);
    out.witness = std::move(w);
  }
  return out;
}

bool in_row_module(const std::vector<UniPoly>& row, const UniPolyMatrix& M) {
  if (row.size() != M.cols) throw std::invalid_argument("in_row_module: length mismatch");
  SmithDecomposition s = smith_form(M);
  UniPolyMatrix Vinv = unimodular_inverse(s.V);
  // c = row * V^{-1}; membership means d_k | c_k on the pivot block and
  // c_k = 0 beyond it.
  for (std::size_t j = 0; j < M.cols; ++j) {
    UniPoly c;
    for (std::size_t i = 0; i < M.cols; ++i) c += row[i] * Vinv.at(i, j);
    if (j < s.rank) {
      if (!poly_divmod(c, s.invariant_factors[j]).second.is_zero()) return false;
    } else if (!c.is_zero()) {
      return false;
    }
  }
  return true;
}

ControllabilityVerdict analyze_mode(const MultiPolyMatrix& M, const Frequency& f) {
  UniPolyMatrix Mv = substitute_frequency(M, f);
  ConstantRankResult cr = constant_rank_test(Mv);
  TorsionResult to = torsion_test(Mv);

  if (cr.constant != to.torsion_free || cr.rank != to.rank)
    throw std::logic_error(
        "analyze_mode: the constant-rank and torsion tests disagree; this is an internal error");

  ControllabilityVerdict v;
  v.frequency = f;
  v.generic_rank = cr.rank;
  v.invariant_factors = to.invariant_factors;
  v.constant_rank = cr.constant;
  v.torsion_free = to.torsion_free;
  v.controllable = cr.constant;
  if (!v.controllable) {
    for (const UniPoly& d : to.invariant_factors)
      if (*d.degree() > 0) {
        v.failure_factor = d;
        break;
      }
    v.torsion_witness = to.witness;
  }
  return v;
}

namespace {

BoxReport analyze_box_impl(const MultiPolyMatrix& M, const FrequencyLattice& L, long B,
                           bool parallel) {
  (void)parallel;
  std::vector<std::vector<long>> modes = modes_in_box(L.d(), B);
  BoxReport report{L, B, std::vector<ControllabilityVerdict>(modes.size()), true};

  std::exception_ptr first_error;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (long idx = 0; idx < static_cast<long>(modes.size()); ++idx) {
    try {
      Frequency f = frequency_from_mode(L, modes[static_cast<std::size_t>(idx)]);
      report.verdicts[static_cast<std::size_t>(idx)] = analyze_mode(M, f);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      {
        if (!first_error) first_error = std::current_exception();
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);

  for (const auto& v : report.verdicts)
    if (!v.controllable) report.overall_controllable_on_box = false;
  return report;
}

}  // namespace

BoxReport analyze_box(const MultiPolyMatrix& M, const FrequencyLattice& L, long B) {
  return analyze_box_impl(M, L, B, true);
}

BoxReport analyze_box_serial(const MultiPolyMatrix& M, const FrequencyLattice& L, long B) {
  return analyze_box_impl(M, L, B, false);
}

namespace {

/// Entries after the symbolic substitution x_k -> 2*i*pi*v_k, as polynomials
/// in (v1..vd, pi, t).
MultiPoly generic_substitute(const MultiPoly& p, std::size_t d) {
  MultiPoly out(d + 2);
  for (const auto& [e, c] : p.terms()) {
    unsigned total = 0;
    MultiPoly::ExpVec ge(d + 2, 0);
    for (std::size_t k = 0; k < d; ++k) {
      ge[k] = e[k];
      total += e[k];
    }
    ge[d] = total;      // pi exponent
    ge[d + 1] = e[d];   // t exponent
    out.add_term(ge, c * GaussianRational(Rational(0), Rational(2)).pow(total));
  }
  return out;
}

MultiPoly generic_minor_det(const std::vector<MultiPoly>& G, std::size_t ncols,
                            const std::vector<std::size_t>& rows,
                            const std::vector<std::size_t>& cols, std::size_t nvars) {
  const std::size_t n = rows.size();
  if (n == 0) return MultiPoly::constant(nvars, GaussianRational(1));
  if (n == 1) return G[rows[0] * ncols + cols[0]];
  MultiPoly det(nvars);
  std::vector<std::size_t> subcols(cols.begin() + 1, cols.end());
  std::vector<std::size_t> subrows;
  for (std::size_t k = 0; k < n; ++k) {
    const MultiPoly& x = G[rows[k] * ncols + cols[0]];
    if (x.is_zero()) continue;
    subrows.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (j != k) subrows.push_back(rows[j]);
    MultiPoly term = x * generic_minor_det(G, ncols, subrows, subcols, nvars);
    if (k % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

/// Dense-in-t view: coefficient polynomials in (v, pi) indexed by t-power.
std::vector<MultiPoly> tau_coeffs(const MultiPoly& p, std::size_t nvars) {
  std::size_t tvar = nvars - 1;
  int deg = p.degree_in(tvar);
  std::vector<MultiPoly> out(deg >= 0 ? static_cast<std::size_t>(deg) + 1 : 0, MultiPoly(nvars));
  for (const auto& [e, c] : p.terms()) {
    MultiPoly::ExpVec base = e;
    base[tvar] = 0;
    out[e[tvar]].add_term(base, c);
  }
  return out;
}

MultiPoly from_tau_coeffs(const std::vector<MultiPoly>& coeffs, std::size_t nvars) {
  MultiPoly out(nvars);
  std::size_t tvar = nvars - 1;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& [e, c] : coeffs[k].terms()) {
      MultiPoly::ExpVec ee = e;
      ee[tvar] = k;
      out.add_term(ee, c);
    }
  return out;
}

void trim_tau(std::vector<MultiPoly>& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

/// Strips the shared monomial in (v, pi) and normalizes the leading scalar.
/// Monomials are units of the enlarged field, so this changes the gcd only
/// by a unit while keeping coefficients small.
void strip_content(std::vector<MultiPoly>& a, std::size_t nvars) {
  trim_tau(a);
  if (a.empty()) return;
  std::vector<unsigned> minexp;
  bool anyterm = false;
  for (const MultiPoly& c : a)
    for (const auto& [e, x] : c.terms()) {
      if (!anyterm) {
        minexp.assign(e.begin(), e.end());
        anyterm = true;
      } else {
        for (std::size_t k = 0; k < e.size(); ++k) minexp[k] = std::min(minexp[k], e[k]);
      }
    }
  bool shift = false;
  for (std::size_t k = 0; anyterm && k + 1 < nvars; ++k)
    if (minexp[k] > 0) shift = true;
  if (shift) {
    for (MultiPoly& c : a) {
      MultiPoly shifted(nvars);
      for (const auto& [e, x] : c.terms()) {
        MultiPoly::ExpVec ee = e;
        for (std::size_t k = 0; k + 1 < nvars; ++k) ee[k] -= minexp[k];
        shifted.add_term(ee, x);
      }
      c = shifted;
    }
  }
  GaussianRational lead = a.back().terms().rbegin()->second;
  if (!lead.is_one()) {
    GaussianRational s = lead.inv();
    for (MultiPoly& c : a) c = c.scaled(s);
  }
}

/// Pseudo-remainder of a by b in the t variable (fraction-free).
std::vector<MultiPoly> pseudo_rem(std::vector<MultiPoly> a, const std::vector<MultiPoly>& b) {
  const MultiPoly& lb = b.back();
  while (a.size() >= b.size()) {
    MultiPoly la = a.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = a[k] * lb;
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= la * b[k];
    a.pop_back();
    trim_tau(a);
    if (a.empty()) break;
  }
  return a;
}

std::vector<MultiPoly> prs_gcd(std::vector<MultiPoly> a, std::vector<MultiPoly> b,
                               std::size_t nvars) {
  strip_content(a, nvars);
  strip_content(b, nvars);
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    std::vector<MultiPoly> r = pseudo_rem(a, b);
    strip_content(r, nvars);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

GenericReport generic_frequency_analysis(const MultiPolyMatrix& M) {
  const std::size_t d = M.d, nvars = d + 2;
  const std::size_t m = M.rows, n = M.cols;
  std::vector<MultiPoly> G;
  G.reserve(m * n);
  for (const MultiPoly& p : M.entries) G.push_back(generic_substitute(p, d));

  // Generic rank: the largest minor size with a nonzero determinant.
  std::size_t rho = 0;
  for (std::size_t j = std::min(m, n); j >= 1 && rho == 0; --j) {
    bool found = false;
    combinations(m, j, [&](const std::vector<std::size_t>& rows) {
      if (found) return;
      combinations(n, j, [&](const std::vector<std::size_t>& cols) {
        if (found) return;
        if (!generic_minor_det(G, n, rows, cols, nvars).is_zero()) found = true;
      });
    });
    if (found) rho = j;
  }

  GenericReport out;
  out.generic_rank = rho;
  if (rho == 0) {
    out.minor_gcd = "1";
    out.gcd_constant_in_tau = true;
    out.exceptional_candidates = "none";
    return out;
  }

  // Gcd of the rho x rho minors over the enlarged field, folded through a
  // pseudo-remainder sequence; only the t-degree is decision-relevant.
  std::vector<std::vector<MultiPoly>> minors;
  combinations(m, rho, [&](const std::vector<std::size_t>& rows) {
    combinations(n, rho, [&](const std::vector<std::size_t>& cols) {
      MultiPoly mm = generic_minor_det(G, n, rows, cols, nvars);
      if (!mm.is_zero()) minors.push_back(tau_coeffs(mm, nvars));
    });
  });

  std::vector<MultiPoly> g = minors[0];
  strip_content(g, nvars);
  for (std::size_t k = 1; k < minors.size() && g.size() > 1; ++k)
    g = prs_gcd(g, minors[k], nvars);

  if (g.size() <= 1) {
    out.minor_gcd = "1";
    out.gcd_constant_in_tau = true;
    // The constant-rank test at a specific frequency can only fail if every
    // t-constant minor vanishes there; report those vanishing conditions.
    std::string conds;
    for (const auto& mc : minors)
      if (mc.size() == 1) {
        if (!conds.empty()) conds += "; ";
        conds += print_poly_generic(from_tau_coeffs(mc, nvars), d) + " = 0";
      }
    out.exceptional_candidates =
        conds.empty() ? "no t-constant minor; screening is inconclusive" : conds;
    return out;
  }

  // Monic-in-t normalization: the leading t-coefficient is the residual
  // content whenever the true gcd is polynomial; otherwise report the
  // quotient form.
  const MultiPoly lead = g.back();
  bool exact = true;
  std::vector<MultiPoly> monic(g.size(), MultiPoly(nvars));
  for (std::size_t k = 0; k < g.size() && exact; ++k)
    exact = MultiPoly::try_divide(g[k], lead, monic[k]);
  if (exact)
    out.minor_gcd = print_poly_generic(from_tau_coeffs(monic, nvars), d);
  else
    out.minor_gcd = "(" + print_poly_generic(from_tau_coeffs(g, nvars), d) + ")/(" +
                    print_poly_generic(lead, d) + ")";
  out.gcd_constant_in_tau = false;
  out.exceptional_candidates =
      "the minor gcd is nonconstant in t; the constant-rank condition fails at every "
      "frequency where the generic rank is attained";
  return out;
}

}  // namespace perioctrl
