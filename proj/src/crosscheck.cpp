#include "perioctrl/crosscheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "perioctrl/exactfield.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace perioctrl {

double default_pi() {
  // The quotient of the pinned rational is already the double nearest pi; the
  // Newton step on sin() makes the refinement explicit and is a fixed point.
  double approx = 245850922.0 / 78256779.0;
  return approx + std::sin(approx);
}

std::size_t numeric_rank(std::vector<std::vector<std::complex<double>>> mat, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("numeric_rank: tol must be positive");
  if (mat.empty() || mat[0].empty()) return 0;
  const std::size_t rows = mat.size(), cols = mat[0].size();

  double max0 = 0.0;
  for (const auto& row : mat)
    for (const auto& z : row) max0 = std::max(max0, std::abs(z));
  const double thresh = tol * std::max(max0, 1.0);

  std::vector<bool> row_done(rows, false), col_done(cols, false);
  std::size_t rank = 0;
  for (;;) {
    double best = 0.0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (row_done[i]) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (col_done[j]) continue;
        double a = std::abs(mat[i][j]);
        if (a > best) {
          best = a;
          bi = i;
          bj = j;
        }
      }
    }
    if (best <= thresh) break;
    ++rank;
    row_done[bi] = true;
    col_done[bj] = true;
    for (std::size_t i = 0; i < rows; ++i) {
      if (row_done[i]) continue;
      std::complex<double> factor = mat[i][bj] / mat[bi][bj];
      if (factor == std::complex<double>(0.0)) continue;
      for (std::size_t j = 0; j < cols; ++j) mat[i][j] -= factor * mat[bi][j];
    }
  }
  return rank;
}

namespace {

std::vector<std::complex<double>> numeric_coeffs(const UniPoly& p, double pi_approx) {
  std::vector<std::complex<double>> c(p.coeffs().size());
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = p.coeff(k).is_zero() ? std::complex<double>(0.0)
                                : field_to_complex(p.coeff(k), pi_approx);
  while (c.size() > 1 && c.back() == std::complex<double>(0.0)) c.pop_back();
  return c;
}

std::complex<double> horner(const std::vector<std::complex<double>>& c, std::complex<double> z) {
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc;
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots(const UniPoly& p, double pi_approx,
                                                   bool* converged) {
  if (converged) *converged = true;

  // Exact square-free part, so the numeric iteration only sees simple roots.
  UniPoly sf = p;
  UniPoly dp = poly_derivative(p);
  if (!dp.is_zero()) {
    UniPoly g = poly_gcd(p, dp);
    sf = poly_divmod(p, g).first;
  }

  std::vector<std::complex<double>> c = numeric_coeffs(sf, pi_approx);
  if (c.size() < 2)
    throw std::invalid_argument("polynomial_roots: degree must be at least 1");
  double norm = 0.0;
  for (const auto& z : c) norm = std::max(norm, std::abs(z));

  // Monic normalization.
  std::complex<double> lead = c.back();
  for (auto& z : c) z /= lead;
  const std::size_t n = c.size() - 1;

  double radius = 0.0;
  for (std::size_t k = 0; k < n; ++k) radius = std::max(radius, std::abs(c[k]));
  radius += 1.0;  // Cauchy bound for monic polynomials

  std::vector<std::complex<double>> z(n);
  const std::complex<double> gen(0.4, 0.9);
  std::complex<double> rot(1.0, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    rot *= gen;
    z[j] = radius * rot;
  }

  const double target = 1e-10 * std::max(norm, 1.0);
  const int max_iter = 1000;
  bool ok = false;
  for (int iter = 0; iter < max_iter && !ok; ++iter) {
    for (std::size_t j = 0; j < n; ++j) {
      std::complex<double> denom(1.0, 0.0);
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) denom *= z[j] - z[k];
      if (denom == std::complex<double>(0.0)) {
        z[j] += std::complex<double>(1e-8, 1e-8);  // separate coincident iterates
        continue;
      }
      z[j] -= horner(c, z[j]) / denom;
    }
    ok = true;
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(horner(c, z[j])) * std::abs(lead) > target) {
        ok = false;
        break;
      }
  }
  if (!ok && converged) *converged = false;

  std::sort(z.begin(), z.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return z;
}

RankSampleReport crosscheck_mode(const MultiPolyMatrix& M, const Frequency& f,
                                 const ControllabilityVerdict& verdict, std::size_t n_samples,
                                 std::uint64_t seed, double tol, double pi_approx) {
  if (n_samples < 1) throw std::invalid_argument("crosscheck_mode: n_samples must be >= 1");

  RankSampleReport rep;
  rep.frequency = f;
  rep.symbolic_rank = verdict.generic_rank;

  std::size_t nonconstant_factors = 0;
  std::vector<std::complex<double>> roots;
  for (const UniPoly& fac : verdict.invariant_factors) {
    if (fac.is_zero() || *fac.degree() == 0) continue;
    ++nonconstant_factors;
    bool conv = true;
    for (const auto& r : polynomial_roots(fac, pi_approx, &conv)) roots.push_back(r);
    if (!conv) rep.roots_converged = false;
  }

  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    return -10.0 + 20.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  rep.sampled_points.reserve(n_samples);
  while (rep.sampled_points.size() < n_samples) {
    std::complex<double> t(uniform(), uniform());
    bool near_root = false;
    for (const auto& r : roots)
      if (std::abs(t - r) < 1e-6) {
        near_root = true;
        break;
      }
    if (near_root) continue;
    rep.sampled_points.emplace_back(t, numeric_rank(numeric_eval(M, f, t, pi_approx), tol));
  }
  rep.root_points.reserve(roots.size());
  for (const auto& r : roots)
    rep.root_points.emplace_back(r, numeric_rank(numeric_eval(M, f, r, pi_approx), tol));

  bool samples_ok = true;
  for (const auto& [t, rk] : rep.sampled_points)
    if (rk != rep.symbolic_rank) samples_ok = false;
  bool roots_drop = true;
  for (const auto& [r, rk] : rep.root_points)
    if (rk >= rep.symbolic_rank) roots_drop = false;
  bool flag_ok = verdict.controllable == (nonconstant_factors == 0);
  rep.consistent = samples_ok && roots_drop && flag_ok;
  return rep;
}

std::uint64_t derive_mode_seed(std::uint64_t seed, std::size_t mode_index) {
  // splitmix64 step over the lexicographic mode index
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(mode_index) + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace {

std::vector<RankSampleReport> crosscheck_box_impl(const MultiPolyMatrix& M, const BoxReport& box,
                                                  std::size_t n_samples, std::uint64_t seed,
                                                  double tol, double pi_approx, bool parallel) {
  (void)parallel;
  std::vector<RankSampleReport> out(box.verdicts.size());
  std::exception_ptr fail;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (long i = 0; i < static_cast<long>(box.verdicts.size()); ++i) {
    try {
      const ControllabilityVerdict& v = box.verdicts[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(i)] =
          crosscheck_mode(M, v.frequency, v, n_samples,
                          derive_mode_seed(seed, static_cast<std::size_t>(i)), tol, pi_approx);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      {
        if (!fail) fail = std::current_exception();
      }
    }
  }
  if (fail) std::rethrow_exception(fail);
  return out;
}

}  // namespace

std::vector<RankSampleReport> crosscheck_box(const MultiPolyMatrix& M, const BoxReport& box,
                                             std::size_t n_samples, std::uint64_t seed, double tol,
                                             double pi_approx) {
  return crosscheck_box_impl(M, box, n_samples, seed, tol, pi_approx, true);
}

std::vector<RankSampleReport> crosscheck_box_serial(const MultiPolyMatrix& M, const BoxReport& box,
                                                    std::size_t n_samples, std::uint64_t seed,
                                                    double tol, double pi_approx) {
  return crosscheck_box_impl(M, box, n_samples, seed, tol, pi_approx, false);
}

}  // namespace perioctrl
