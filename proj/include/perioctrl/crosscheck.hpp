#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "perioctrl/analyzer.hpp"
#include "perioctrl/polymatrix.hpp"
#include "perioctrl/unipoly.hpp"

namespace perioctrl {

/// The pinned numeric value of pi: 245850922/78256779, refined to the double
/// nearest pi (bit pattern 0x400921FB54442D18).
double default_pi();

/// Rank of a complex matrix by row reduction with full pivoting. A pivot
/// counts while its magnitude exceeds tol * max(initial max entry magnitude, 1).
std::size_t numeric_rank(std::vector<std::vector<std::complex<double>>> mat, double tol);

/// All complex roots of p after numeric coefficient evaluation, by
/// simultaneous (Durand-Kerner) iteration from a deterministic initial circle
/// down to residual <= 1e-10 * max numeric coefficient. Multiple roots are
/// reported once (iteration runs on the exact square-free part). If the
/// iteration cap is hit, `converged` (when given) is set false and the current
/// iterates are returned anyway.
std::vector<std::complex<double>> polynomial_roots(const UniPoly& p, double pi_approx,
                                                   bool* converged = nullptr);

struct RankSampleReport {
  Frequency frequency;
  std::vector<std::pair<std::complex<double>, std::size_t>> sampled_points;
  std::vector<std::pair<std::complex<double>, std::size_t>> root_points;
  std::size_t symbolic_rank = 0;
  bool roots_converged = true;
  bool consistent = false;
};

/// Samples numeric ranks of M at frequency f: n_samples pseudo-random t in the
/// box [-10,10]^2 (excluding points within 1e-6 of computed roots), plus one
/// evaluation at every root of every nonconstant invariant factor. The report
/// is consistent when every generic sample matches the symbolic rank, every
/// root point drops below it, and the verdict flag agrees with the factors.
RankSampleReport crosscheck_mode(const MultiPolyMatrix& M, const Frequency& f,
                                 const ControllabilityVerdict& verdict, std::size_t n_samples,
                                 std::uint64_t seed, double tol = 1e-8,
                                 double pi_approx = default_pi());

/// Per-mode seed derivation used by the box drivers (splitmix64 over the
/// lexicographic mode index), exposed so single-mode runs can reproduce it.
std::uint64_t derive_mode_seed(std::uint64_t seed, std::size_t mode_index);

/// Crosschecks every verdict of a box report; parallel across modes.
std::vector<RankSampleReport> crosscheck_box(const MultiPolyMatrix& M, const BoxReport& box,
                                             std::size_t n_samples, std::uint64_t seed,
                                             double tol = 1e-8, double pi_approx = default_pi());

/// Serial reference for crosscheck_box.
std::vector<RankSampleReport> crosscheck_box_serial(const MultiPolyMatrix& M,
                                                    const BoxReport& box, std::size_t n_samples,
                                                    std::uint64_t seed, double tol = 1e-8,
                                                    double pi_approx = default_pi());

}  // namespace perioctrl
