// Wall-time comparison of the parallel kernels against their serial
// references: box analysis, numeric crosscheck, and spatial synthesis.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "perioctrl/analyzer.hpp"
#include "perioctrl/crosscheck.hpp"
#include "perioctrl/parser.hpp"
#include "perioctrl/witness.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace perioctrl;

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
#endif
}

MultiPoly random_entry(std::mt19937_64& rng, std::size_t d) {
  std::uniform_int_distribution<int> coeff(-3, 3), deg(0, 2);
  MultiPoly p(d + 1);
  int terms = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < terms; ++t) {
    std::vector<unsigned> exps(d + 1, 0);
    for (std::size_t k = 0; k < d; ++k) exps[k] = static_cast<unsigned>(deg(rng));
    exps[d] = static_cast<unsigned>(deg(rng));  // tau power
    GaussianRational c(Rational(coeff(rng)), Rational(coeff(rng)));
    p.add_term(exps, c);
  }
  return p;
}

MultiPolyMatrix random_system(std::mt19937_64& rng, std::size_t d) {
  std::size_t m = 1 + rng() % 3, n = 1 + rng() % 3;
  MultiPolyMatrix M(m, n, d);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) M.at(i, j) = random_entry(rng, d);
  return M;
}

void report(const char* name, double serial_s, double parallel_s) {
  std::printf("%-22s serial %8.3f s   parallel %8.3f s   speedup %.2fx\n", name, serial_s,
              parallel_s, parallel_s > 0.0 ? serial_s / parallel_s : 0.0);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled; both columns run the serial path\n");
#endif

  FrequencyLattice lat(std::vector<std::vector<Rational>>{{Rational(1)}});
  std::mt19937_64 rng(42);
  std::vector<MultiPolyMatrix> systems;
  for (int k = 0; k < 24; ++k) systems.push_back(random_system(rng, 1));

  // Box analysis across modes
  double t0 = now();
  std::vector<BoxReport> serial_reports;
  for (const auto& M : systems) serial_reports.push_back(analyze_box_serial(M, lat, 24));
  double t1 = now();
  std::vector<BoxReport> parallel_reports;
  for (const auto& M : systems) parallel_reports.push_back(analyze_box(M, lat, 24));
  double t2 = now();
  report("analyze_box", t1 - t0, t2 - t1);
  for (std::size_t k = 0; k < systems.size(); ++k)
    for (std::size_t i = 0; i < serial_reports[k].verdicts.size(); ++i)
      if (serial_reports[k].verdicts[i].controllable !=
          parallel_reports[k].verdicts[i].controllable) {
        std::printf("MISMATCH between serial and parallel analyze\n");
        return 1;
      }

  // Numeric crosscheck across modes
  MultiPolyMatrix heat(1, 1, 1);
  heat.at(0, 0) = parse_poly("t - x1^2", 1);
  BoxReport heat_box = analyze_box(heat, lat, 48);
  t0 = now();
  auto cc_serial = crosscheck_box_serial(heat, heat_box, 50, 1);
  t1 = now();
  auto cc_parallel = crosscheck_box(heat, heat_box, 50, 1);
  t2 = now();
  report("crosscheck_box", t1 - t0, t2 - t1);
  for (std::size_t i = 0; i < cc_serial.size(); ++i)
    if (cc_serial[i].sampled_points != cc_parallel[i].sampled_points) {
      std::printf("MISMATCH between serial and parallel crosscheck\n");
      return 1;
    }

  // Spatial synthesis across grid rows
  MultiPolyMatrix transport(1, 2, 1);
  transport.at(0, 0) = parse_poly("t + x1", 1);
  transport.at(0, 1) = parse_poly("-1", 1);
  double pi_a = default_pi();
  std::vector<ModeTrajectory> modes;
  for (long n = -2; n <= 2; ++n) {
    Frequency f = frequency_from_mode(lat, {n});
    ConnectResult cr = connect(transport, f, {parse_latent("0")}, {parse_latent("exp(t)")},
                               Rational(1), pi_a);
    modes.push_back(cr.w);
  }
  // Distinct frequencies per mode; merge them into one synthesis call.
  std::vector<std::vector<double>> x_grid;
  for (int k = 0; k < 2048; ++k) x_grid.push_back({static_cast<double>(k) / 2048.0});
  std::vector<double> t_grid;
  for (int g = 0; g < 201; ++g) t_grid.push_back(-1.0 + 3.0 * g / 200.0);
  t0 = now();
  SpatialField fs = synthesize_spatial_serial(modes, x_grid, t_grid, pi_a);
  t1 = now();
  SpatialField fp = synthesize_spatial(modes, x_grid, t_grid, pi_a);
  t2 = now();
  report("synthesize_spatial", t1 - t0, t2 - t1);
  if (fs.values != fp.values) {
    std::printf("MISMATCH between serial and parallel synthesis\n");
    return 1;
  }
  return 0;
}
