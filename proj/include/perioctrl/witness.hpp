#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "perioctrl/analyzer.hpp"

namespace perioctrl {

/// Closed-form smooth function of one real variable: constants, t, sums,
/// products, integer powers, exp(lambda*t), quotients, and the one-sided
/// mollifier f(s) = exp(-1/s) for s > 0 (else 0) at affine arguments. The
/// class is closed under differentiation and evaluates finitely at every
/// real t.
class ExprFunction {
public:
  ExprFunction();  // the zero function

  static ExprFunction constant(std::complex<double> c);
  static ExprFunction variable();
  static ExprFunction exponential(std::complex<double> lambda);  // exp(lambda*t)
  static ExprFunction mollifier(double scale, double offset);    // f(scale*t + offset)
  static ExprFunction quotient(const ExprFunction& num, const ExprFunction& den);

  ExprFunction operator+(const ExprFunction& o) const;
  ExprFunction operator-(const ExprFunction& o) const;
  ExprFunction operator*(const ExprFunction& o) const;
  ExprFunction pow(unsigned k) const;
  ExprFunction scaled(std::complex<double> c) const;

  ExprFunction derivative() const;
  std::complex<double> eval(double t) const;

  bool is_structural_zero() const;

  struct Node;

private:
  explicit ExprFunction(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

ExprFunction differentiate(const ExprFunction& g);

/// The smooth step with chi(t) = 1 for t <= 0, chi(t) = 0 for t >= T,
/// realized as f(T-t) / (f(T-t) + f(t)).
ExprFunction build_cutoff(const Rational& T);

/// Component k of the result is sum_j P[k][j](d/dt) applied to l[j]; the
/// field coefficients are evaluated numerically at construction.
std::vector<ExprFunction> apply_operator(const UniPolyMatrix& P,
                                         const std::vector<ExprFunction>& l, double pi_approx);

struct ModeTrajectory {
  Frequency frequency;
  std::vector<ExprFunction> components;
};

struct ConnectResult {
  ModeTrajectory w;
  ModeTrajectory w1;
  ModeTrajectory w2;
};

struct NotControllableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Builds endpoint trajectories from the latent vectors and splices them
/// through the image representation: w = N(d/dt)(chi*l1 + (1-chi)*l2), so
/// w solves the mode ODE identically, matches w1 for t <= 0 and w2 for
/// t >= T. Throws NotControllableError when the mode fails the tests.
ConnectResult connect(const MultiPolyMatrix& M, const Frequency& f,
                      const std::vector<ExprFunction>& l1, const std::vector<ExprFunction>& l2,
                      const Rational& T, double pi_approx);

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 0;
};

/// 401 uniform points on [-T, 2T].
GridSpec default_grid(const Rational& T);

struct WitnessReport {
  double max_residual = 0.0;
  double left_match_error = 0.0;
  double right_match_error = 0.0;
  std::string grid;
  bool pass = false;
  double residual_tol = 0.0;
  double match_tol = 0.0;
};

inline constexpr double kResidualTol = 1e-6;
inline constexpr double kMatchTol = 1e-10;
inline constexpr double kFdStep = 1e-3;

/// Residuals of M(2*pi*i*v, d/dt) w via central finite differences (an
/// independent path around the symbolic derivatives), plus endpoint match
/// errors against w1 on t < 0 and w2 on t > T.
WitnessReport verify_witness(const MultiPolyMatrix& M, const Frequency& f,
                             const ModeTrajectory& w, const ModeTrajectory& w1,
                             const ModeTrajectory& w2, const Rational& T, const GridSpec& grid,
                             double pi_approx, double fd_step);

struct SpatialField {
  std::size_t d = 0;
  std::size_t ncomp = 0;
  std::vector<std::vector<double>> x;  // spatial sample points
  std::vector<double> t;
  std::vector<std::complex<double>> values;  // ((xi * t.size()) + ti) * ncomp + c

  const std::complex<double>& at(std::size_t xi, std::size_t ti, std::size_t c) const {
    return values[(xi * t.size() + ti) * ncomp + c];
  }
};

/// w(x, t) = sum over modes of e^{2*pi*i*v.x} * T_v(t) on the sample grid.
SpatialField synthesize_spatial(const std::vector<ModeTrajectory>& modes,
                                const std::vector<std::vector<double>>& x_grid,
                                const std::vector<double>& t_grid, double pi_approx);
SpatialField synthesize_spatial_serial(const std::vector<ModeTrajectory>& modes,
                                       const std::vector<std::vector<double>>& x_grid,
                                       const std::vector<double>& t_grid, double pi_approx);

/// Header "x_1..x_d,t,component_index,re,im", one row per sample.
std::string to_csv(const SpatialField& field);

/// Small closed-form latent language: rationals, i, t, exp(<affine in t>),
/// '+', '-', '*', '^'. Used by the command line and the tests.
ExprFunction parse_latent(const std::string& src);

/// Central finite-difference weights for the m-th derivative to the given
/// even accuracy order, on the symmetric integer stencil; exposed for tests.
std::vector<double> central_fd_weights(unsigned m, unsigned accuracy);

}  // namespace perioctrl
