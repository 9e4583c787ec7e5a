#include "perioctrl/witness.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace perioctrl {

// ---------------------------------------------------------------------------
// Expression trees

struct ExprFunction::Node {
  enum class Kind { Const, Var, Add, Mul, Pow, Exp, Moll, Quot };

  Kind kind;
  std::complex<double> c{};                          // Const value, Exp rate
  std::shared_ptr<const Node> lhs, rhs;              // children
  unsigned k = 0;                                    // Pow exponent, Moll order
  double a = 0.0, b = 0.0;                           // Moll affine argument

  explicit Node(Kind kd) : kind(kd) {}
};

namespace {

using NodePtr = std::shared_ptr<const ExprFunction::Node>;
using Kind = ExprFunction::Node::Kind;

NodePtr make_const(std::complex<double> c) {
  auto n = std::make_shared<ExprFunction::Node>(Kind::Const);
  n->c = c;
  return n;
}

bool is_const(const NodePtr& n, std::complex<double> v) {
  return n->kind == Kind::Const && n->c == v;
}

NodePtr make_add(NodePtr a, NodePtr b) {
  if (a->kind == Kind::Const && b->kind == Kind::Const) return make_const(a->c + b->c);
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  auto n = std::make_shared<ExprFunction::Node>(Kind::Add);
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

NodePtr make_mul(NodePtr a, NodePtr b) {
  if (a->kind == Kind::Const && b->kind == Kind::Const) return make_const(a->c * b->c);
  if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  auto n = std::make_shared<ExprFunction::Node>(Kind::Mul);
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

NodePtr derivative_of(const NodePtr& n);

NodePtr make_pow(NodePtr base, unsigned k) {
  if (k == 0) return make_const(1.0);
  if (k == 1) return base;
  auto n = std::make_shared<ExprFunction::Node>(Kind::Pow);
  n->lhs = std::move(base);
  n->k = k;
  return n;
}

NodePtr derivative_of(const NodePtr& n) {
  switch (n->kind) {
    case Kind::Const:
      return make_const(0.0);
    case Kind::Var:
      return make_const(1.0);
    case Kind::Add:
      return make_add(derivative_of(n->lhs), derivative_of(n->rhs));
    case Kind::Mul:
      return make_add(make_mul(derivative_of(n->lhs), n->rhs),
                      make_mul(n->lhs, derivative_of(n->rhs)));
    case Kind::Pow:
      // k * base^(k-1) * base'
      return make_mul(make_const(static_cast<double>(n->k)),
                      make_mul(make_pow(n->lhs, n->k - 1), derivative_of(n->lhs)));
    case Kind::Exp:
      return make_mul(make_const(n->c), [&] {
        auto e = std::make_shared<ExprFunction::Node>(Kind::Exp);
        e->c = n->c;
        return e;
      }());
    case Kind::Moll: {
      auto m = std::make_shared<ExprFunction::Node>(Kind::Moll);
      m->k = n->k + 1;
      m->a = n->a;
      m->b = n->b;
      return make_mul(make_const(n->a), m);
    }
    case Kind::Quot: {
      // (u'v - uv') / v^2
      NodePtr du = derivative_of(n->lhs), dv = derivative_of(n->rhs);
      NodePtr num = make_add(make_mul(du, n->rhs),
                             make_mul(make_const(-1.0), make_mul(n->lhs, dv)));
      auto q = std::make_shared<ExprFunction::Node>(Kind::Quot);
      q->lhs = std::move(num);
      q->rhs = make_mul(n->rhs, n->rhs);
      return q;
    }
  }
  throw std::logic_error("ExprFunction: unknown node kind");
}

/// k-th derivative of f(s) = exp(-1/s) at s > 0: exp(-1/s) * p_k(1/s) with
/// p_0 = 1 and p_{k+1}(u) = u^2 (p_k(u) - p_k'(u)).
double mollifier_eval(double s, unsigned k) {
  // f and all its derivatives round to zero well before s = 1e-5.
  if (s < 1e-5) return 0.0;
  std::vector<double> p{1.0};
  for (unsigned iter = 0; iter < k; ++iter) {
    std::vector<double> q(p.size() + 2, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      double di = p[i] - (i + 1 < p.size() ? (static_cast<double>(i) + 1.0) * p[i + 1] : 0.0);
      q[i + 2] = di;
    }
    p = std::move(q);
  }
  double u = 1.0 / s;
  double acc = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * u + p[i];
  return std::exp(-u) * acc;
}

std::complex<double> eval_node(const ExprFunction::Node& n, double t) {
  switch (n.kind) {
    case Kind::Const:
      return n.c;
    case Kind::Var:
      return {t, 0.0};
    case Kind::Add:
      return eval_node(*n.lhs, t) + eval_node(*n.rhs, t);
    case Kind::Mul:
      return eval_node(*n.lhs, t) * eval_node(*n.rhs, t);
    case Kind::Pow: {
      std::complex<double> base = eval_node(*n.lhs, t), acc(1.0, 0.0);
      for (unsigned j = 0; j < n.k; ++j) acc *= base;
      return acc;
    }
    case Kind::Exp:
      return std::exp(n.c * t);
    case Kind::Moll:
      return {mollifier_eval(n.a * t + n.b, n.k), 0.0};
    case Kind::Quot:
      return eval_node(*n.lhs, t) / eval_node(*n.rhs, t);
  }
  throw std::logic_error("ExprFunction: unknown node kind");
}

}  // namespace

ExprFunction::ExprFunction() : node_(make_const(0.0)) {}

ExprFunction ExprFunction::constant(std::complex<double> c) { return ExprFunction(make_const(c)); }

ExprFunction ExprFunction::variable() {
  return ExprFunction(std::make_shared<Node>(Kind::Var));
}

ExprFunction ExprFunction::exponential(std::complex<double> lambda) {
  if (lambda == std::complex<double>(0.0, 0.0)) return constant(1.0);
  auto n = std::make_shared<Node>(Kind::Exp);
  n->c = lambda;
  return ExprFunction(n);
}

ExprFunction ExprFunction::mollifier(double scale, double offset) {
  auto n = std::make_shared<Node>(Kind::Moll);
  n->a = scale;
  n->b = offset;
  n->k = 0;
  return ExprFunction(n);
}

ExprFunction ExprFunction::quotient(const ExprFunction& num, const ExprFunction& den) {
  auto n = std::make_shared<Node>(Kind::Quot);
  n->lhs = num.node_;
  n->rhs = den.node_;
  return ExprFunction(n);
}

ExprFunction ExprFunction::operator+(const ExprFunction& o) const {
  return ExprFunction(make_add(node_, o.node_));
}
ExprFunction ExprFunction::operator-(const ExprFunction& o) const {
  return *this + o.scaled(-1.0);
}
ExprFunction ExprFunction::operator*(const ExprFunction& o) const {
  return ExprFunction(make_mul(node_, o.node_));
}
ExprFunction ExprFunction::pow(unsigned k) const { return ExprFunction(make_pow(node_, k)); }
ExprFunction ExprFunction::scaled(std::complex<double> c) const {
  return ExprFunction(make_mul(make_const(c), node_));
}

ExprFunction ExprFunction::derivative() const { return ExprFunction(derivative_of(node_)); }

std::complex<double> ExprFunction::eval(double t) const { return eval_node(*node_, t); }

bool ExprFunction::is_structural_zero() const {
  return node_->kind == Kind::Const && node_->c == std::complex<double>(0.0, 0.0);
}

ExprFunction differentiate(const ExprFunction& g) { return g.derivative(); }

// ---------------------------------------------------------------------------
// Cutoff and operator application

ExprFunction build_cutoff(const Rational& T) {
  if (T.sign() <= 0) throw std::invalid_argument("build_cutoff: T must be positive");
  double Td = T.to_double();
  ExprFunction left = ExprFunction::mollifier(-1.0, Td);  // f(T - t)
  ExprFunction right = ExprFunction::mollifier(1.0, 0.0);  // f(t)
  return ExprFunction::quotient(left, left + right);
}

std::vector<ExprFunction> apply_operator(const UniPolyMatrix& P,
                                         const std::vector<ExprFunction>& l, double pi_approx) {
  if (P.cols != l.size()) throw std::invalid_argument("apply_operator: column/latent mismatch");

  // Derivative towers per input component, up to the highest power used.
  std::vector<std::vector<ExprFunction>> dl(l.size());
  for (std::size_t j = 0; j < l.size(); ++j) {
    int maxdeg = 0;
    for (std::size_t i = 0; i < P.rows; ++i) {
      const UniPoly& p = P.at(i, j);
      if (!p.is_zero()) maxdeg = std::max(maxdeg, *p.degree());
    }
    dl[j].push_back(l[j]);
    for (int deg = 1; deg <= maxdeg; ++deg) dl[j].push_back(dl[j].back().derivative());
  }

  std::vector<ExprFunction> out(P.rows);
  for (std::size_t i = 0; i < P.rows; ++i) {
    ExprFunction acc;
    for (std::size_t j = 0; j < P.cols; ++j) {
      const UniPoly& p = P.at(i, j);
      if (p.is_zero()) continue;
      for (std::size_t deg = 0; deg < p.coeffs().size(); ++deg) {
        const FieldElement& c = p.coeff(deg);
        if (c.is_zero()) continue;
        acc = acc + dl[j][deg].scaled(field_to_complex(c, pi_approx));
      }
    }
    out[i] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Connect and verify

ConnectResult connect(const MultiPolyMatrix& M, const Frequency& f,
                      const std::vector<ExprFunction>& l1, const std::vector<ExprFunction>& l2,
                      const Rational& T, double pi_approx) {
  if (T.sign() <= 0) throw std::invalid_argument("connect: T must be positive");
  ControllabilityVerdict verdict = analyze_mode(M, f);
  if (!verdict.controllable)
    throw NotControllableError("connect: mode is not controllable, no witness exists");

  UniPolyMatrix Mv = substitute_frequency(M, f);
  UniPolyMatrix N = kernel_representation(Mv);
  if (l1.size() != N.cols || l2.size() != N.cols)
    throw std::invalid_argument("connect: latent vectors must have n - r = " +
                                std::to_string(N.cols) + " components");

  ExprFunction chi = build_cutoff(T);
  ExprFunction one_minus_chi = ExprFunction::constant(1.0) - chi;
  std::vector<ExprFunction> patched(N.cols);
  for (std::size_t c = 0; c < N.cols; ++c)
    patched[c] = chi * l1[c] + one_minus_chi * l2[c];

  ConnectResult out;
  out.w1 = {f, apply_operator(N, l1, pi_approx)};
  out.w2 = {f, apply_operator(N, l2, pi_approx)};
  out.w = {f, apply_operator(N, patched, pi_approx)};
  return out;
}

GridSpec default_grid(const Rational& T) {
  double Td = T.to_double();
  return {-Td, 2.0 * Td, 401};
}

std::vector<double> central_fd_weights(unsigned m, unsigned accuracy) {
  if (accuracy == 0 || accuracy % 2 != 0)
    throw std::invalid_argument("central_fd_weights: accuracy must be a positive even number");
  unsigned npoints = 2 * ((m + 1) / 2) - 1 + accuracy;
  unsigned p = (npoints - 1) / 2;

  // Fornberg's recursion for the weights of the m-th derivative at 0 on the
  // stencil -p..p.
  std::vector<double> x(npoints);
  for (unsigned i = 0; i < npoints; ++i) x[i] = static_cast<double>(i) - static_cast<double>(p);
  std::vector<std::vector<double>> C(npoints, std::vector<double>(m + 1, 0.0));
  C[0][0] = 1.0;
  double c1 = 1.0, c4 = x[0];
  for (unsigned i = 1; i < npoints; ++i) {
    unsigned mn = std::min(i, m);
    double c2 = 1.0, c5 = c4;
    c4 = x[i];
    for (unsigned j = 0; j < i; ++j) {
      double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (unsigned k = mn; k >= 1; --k)
          C[i][k] = c1 * (k * C[i - 1][k - 1] - c5 * C[i - 1][k]) / c2;
        C[i][0] = -c1 * c5 * C[i - 1][0] / c2;
      }
      for (unsigned k = mn; k >= 1; --k) C[j][k] = (c4 * C[j][k] - k * C[j][k - 1]) / c3;
      C[j][0] = c4 * C[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(npoints);
  for (unsigned i = 0; i < npoints; ++i) w[i] = C[i][m];
  return w;
}

WitnessReport verify_witness(const MultiPolyMatrix& M, const Frequency& f,
                             const ModeTrajectory& w, const ModeTrajectory& w1,
                             const ModeTrajectory& w2, const Rational& T, const GridSpec& grid,
                             double pi_approx, double fd_step) {
  UniPolyMatrix Mv = substitute_frequency(M, f);
  if (w.components.size() != Mv.cols)
    throw std::invalid_argument("verify_witness: component count mismatch");

  int maxdeg = 0;
  for (const UniPoly& p : Mv.entries)
    if (!p.is_zero()) maxdeg = std::max(maxdeg, *p.degree());

  // One shared symmetric stencil, wide enough for the highest derivative at
  // fourth-order accuracy; per-order weights all live on it.
  const unsigned accuracy = 4;
  unsigned npoints = maxdeg == 0 ? 1 : 2 * ((static_cast<unsigned>(maxdeg) + 1) / 2) - 1 + accuracy;
  unsigned p = (npoints - 1) / 2;
  std::vector<std::vector<double>> W(static_cast<std::size_t>(maxdeg) + 1);
  for (int deg = 1; deg <= maxdeg; ++deg) {
    // Weights live on the shared stencil; narrower ones are zero-padded
    // symmetrically.
    std::vector<double> full = central_fd_weights(static_cast<unsigned>(deg), accuracy);
    unsigned np_deg = static_cast<unsigned>(full.size());
    std::vector<double> padded(npoints, 0.0);
    unsigned off = (npoints - np_deg) / 2;
    for (unsigned s = 0; s < np_deg; ++s) padded[s + off] = full[s];
    W[static_cast<std::size_t>(deg)] = std::move(padded);
  }

  // Numeric coefficients of the operator.
  std::vector<std::vector<std::vector<std::complex<double>>>> coef(
      Mv.rows, std::vector<std::vector<std::complex<double>>>(Mv.cols));
  for (std::size_t i = 0; i < Mv.rows; ++i)
    for (std::size_t j = 0; j < Mv.cols; ++j) {
      const UniPoly& q = Mv.at(i, j);
      auto& c = coef[i][j];
      c.resize(q.coeffs().size());
      for (std::size_t deg = 0; deg < q.coeffs().size(); ++deg)
        c[deg] = q.coeff(deg).is_zero() ? std::complex<double>(0.0)
                                        : field_to_complex(q.coeff(deg), pi_approx);
    }

  double Td = T.to_double();
  WitnessReport rep;
  rep.residual_tol = kResidualTol;
  rep.match_tol = kMatchTol;
  {
    std::ostringstream os;
    os << grid.points << " uniform points on [" << grid.lo << ", " << grid.hi << "], fd_step "
       << fd_step;
    rep.grid = os.str();
  }

  std::vector<double> hpow(static_cast<std::size_t>(maxdeg) + 1, 1.0);
  for (int deg = 1; deg <= maxdeg; ++deg)
    hpow[static_cast<std::size_t>(deg)] = hpow[static_cast<std::size_t>(deg) - 1] * fd_step;

  for (std::size_t gidx = 0; gidx < grid.points; ++gidx) {
    double t = grid.points > 1
                   ? grid.lo + (grid.hi - grid.lo) * static_cast<double>(gidx) /
                         static_cast<double>(grid.points - 1)
                   : grid.lo;

    // Stencil samples of every component.
    std::vector<std::vector<std::complex<double>>> samples(Mv.cols);
    for (std::size_t j = 0; j < Mv.cols; ++j) {
      samples[j].resize(npoints);
      for (unsigned s = 0; s < npoints; ++s)
        samples[j][s] = w.components[j].eval(
            t + (static_cast<double>(s) - static_cast<double>(p)) * fd_step);
    }

    for (std::size_t i = 0; i < Mv.rows; ++i) {
      std::complex<double> res(0.0, 0.0);
      for (std::size_t j = 0; j < Mv.cols; ++j) {
        for (std::size_t deg = 0; deg < coef[i][j].size(); ++deg) {
          if (coef[i][j][deg] == std::complex<double>(0.0)) continue;
          std::complex<double> dval(0.0, 0.0);
          if (deg == 0) {
            dval = samples[j][p];
          } else {
            for (unsigned s = 0; s < npoints; ++s) {
              if (W[deg][s] == 0.0) continue;
              dval += W[deg][s] * samples[j][s];
            }
            dval /= hpow[deg];
          }
          res += coef[i][j][deg] * dval;
        }
      }
      rep.max_residual = std::max(rep.max_residual, std::abs(res));
    }

    // Endpoint matches on the strict half-lines.
    if (t < 0.0) {
      for (std::size_t j = 0; j < Mv.cols; ++j)
        rep.left_match_error = std::max(
            rep.left_match_error, std::abs(samples[j][p] - w1.components[j].eval(t)));
    } else if (t > Td) {
      for (std::size_t j = 0; j < Mv.cols; ++j)
        rep.right_match_error = std::max(
            rep.right_match_error, std::abs(samples[j][p] - w2.components[j].eval(t)));
    }
  }

  rep.pass = rep.max_residual <= rep.residual_tol && rep.left_match_error <= rep.match_tol &&
             rep.right_match_error <= rep.match_tol;
  return rep;
}

// ---------------------------------------------------------------------------
// Spatial synthesis

namespace {

SpatialField synthesize_impl(const std::vector<ModeTrajectory>& modes,
                             const std::vector<std::vector<double>>& x_grid,
                             const std::vector<double>& t_grid, double pi_approx, bool parallel) {
  (void)parallel;
  if (modes.empty()) throw std::invalid_argument("synthesize_spatial: no modes");
  for (std::size_t a = 0; a < modes.size(); ++a)
    for (std::size_t b = a + 1; b < modes.size(); ++b)
      if (modes[a].frequency.v == modes[b].frequency.v)
        throw std::invalid_argument("synthesize_spatial: duplicate mode frequencies");

  SpatialField field;
  field.d = modes[0].frequency.v.size();
  field.ncomp = modes[0].components.size();
  field.x = x_grid;
  field.t = t_grid;
  for (const auto& m : modes)
    if (m.components.size() != field.ncomp)
      throw std::invalid_argument("synthesize_spatial: component counts differ between modes");
  for (const auto& xp : x_grid)
    if (xp.size() != field.d)
      throw std::invalid_argument("synthesize_spatial: spatial point dimension mismatch");

  // Mode signals sampled once; the x loop only applies phases.
  std::vector<std::vector<std::complex<double>>> signal(
      modes.size(), std::vector<std::complex<double>>(t_grid.size() * field.ncomp));
  for (std::size_t mi = 0; mi < modes.size(); ++mi)
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti)
      for (std::size_t c = 0; c < field.ncomp; ++c)
        signal[mi][ti * field.ncomp + c] = modes[mi].components[c].eval(t_grid[ti]);

  std::vector<std::vector<double>> vdot(modes.size(), std::vector<double>(x_grid.size()));
  for (std::size_t mi = 0; mi < modes.size(); ++mi)
    for (std::size_t xi = 0; xi < x_grid.size(); ++xi) {
      double dot = 0.0;
      for (std::size_t k = 0; k < field.d; ++k)
        dot += modes[mi].frequency.v[k].to_double() * x_grid[xi][k];
      vdot[mi][xi] = dot;
    }

  field.values.assign(x_grid.size() * t_grid.size() * field.ncomp, {0.0, 0.0});
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (long xi = 0; xi < static_cast<long>(x_grid.size()); ++xi) {
    for (std::size_t mi = 0; mi < modes.size(); ++mi) {
      std::complex<double> phase = std::polar(1.0, 2.0 * pi_approx * vdot[mi][xi]);
      for (std::size_t ti = 0; ti < t_grid.size(); ++ti)
        for (std::size_t c = 0; c < field.ncomp; ++c)
          field.values[(static_cast<std::size_t>(xi) * t_grid.size() + ti) * field.ncomp + c] +=
              phase * signal[mi][ti * field.ncomp + c];
    }
  }
  return field;
}

}  // namespace

SpatialField synthesize_spatial(const std::vector<ModeTrajectory>& modes,
                                const std::vector<std::vector<double>>& x_grid,
                                const std::vector<double>& t_grid, double pi_approx) {
  return synthesize_impl(modes, x_grid, t_grid, pi_approx, true);
}

SpatialField synthesize_spatial_serial(const std::vector<ModeTrajectory>& modes,
                                       const std::vector<std::vector<double>>& x_grid,
                                       const std::vector<double>& t_grid, double pi_approx) {
  return synthesize_impl(modes, x_grid, t_grid, pi_approx, false);
}

std::string to_csv(const SpatialField& field) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t k = 0; k < field.d; ++k) os << "x_" << (k + 1) << ",";
  os << "t,component_index,re,im\n";
  for (std::size_t xi = 0; xi < field.x.size(); ++xi)
    for (std::size_t ti = 0; ti < field.t.size(); ++ti)
      for (std::size_t c = 0; c < field.ncomp; ++c) {
        for (std::size_t k = 0; k < field.d; ++k) os << field.x[xi][k] << ",";
        const std::complex<double>& z = field.at(xi, ti, c);
        os << field.t[ti] << "," << c << "," << z.real() << "," << z.imag() << "\n";
      }
  return os.str();
}

// ---------------------------------------------------------------------------
// Latent language

namespace {

struct LatentParser {
  const std::string& s;
  std::size_t pos = 0;

  explicit LatentParser(const std::string& src) : s(src) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("latent expression: " + msg + " at position " +
                                std::to_string(pos));
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }

  ExprFunction parse() {
    ExprFunction v = expr();
    skip();
    if (pos != s.size()) fail("trailing input");
    return v;
  }

  ExprFunction expr() {
    bool neg = false;
    if (peek() == '-') {
      ++pos;
      neg = true;
    }
    ExprFunction v = term();
    if (neg) v = v.scaled(-1.0);
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos;
        v = v + term();
      } else if (c == '-') {
        ++pos;
        v = v - term();
      } else {
        return v;
      }
    }
  }

  ExprFunction term() {
    ExprFunction v = factor();
    while (peek() == '*') {
      ++pos;
      v = v * factor();
    }
    return v;
  }

  ExprFunction factor() {
    ExprFunction v = atom();
    if (peek() == '^') {
      ++pos;
      skip();
      if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
        fail("exponent must be a nonnegative integer");
      unsigned e = 0;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        e = e * 10 + static_cast<unsigned>(s[pos++] - '0');
      v = v.pow(e);
    }
    return v;
  }

  ExprFunction atom() {
    char c = peek();
    if (c == '(') {
      ++pos;
      ExprFunction v = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string name;
      while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos])))
        name.push_back(s[pos++]);
      if (name == "t") return ExprFunction::variable();
      if (name == "i") return ExprFunction::constant({0.0, 1.0});
      if (name == "exp") {
        if (peek() != '(') fail("expected '(' after exp");
        ++pos;
        ExprFunction arg = expr();
        if (peek() != ')') fail("expected ')'");
        ++pos;
        // The argument must be affine in t; probe three points.
        std::complex<double> a0 = arg.eval(0.0), a1 = arg.eval(1.0), a2 = arg.eval(2.0);
        std::complex<double> lam = a1 - a0;
        if (std::abs(a2 - a1 - lam) > 1e-9 * (1.0 + std::abs(lam)))
          fail("exp argument must be affine in t");
        return ExprFunction::constant(std::exp(a0)) * ExprFunction::exponential(lam);
      }
      fail("unknown symbol '" + name + "'");
    }
    fail("unexpected character");
  }

  ExprFunction number() {
    auto digits = [&]() {
      std::string ds;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        ds.push_back(s[pos++]);
      return ds;
    };
    std::string np = digits();
    double num = std::stod(np);
    skip();
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      skip();
      if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
        fail("expected integer denominator");
      double den = std::stod(digits());
      if (den == 0.0) fail("zero denominator");
      return ExprFunction::constant(num / den);
    }
    return ExprFunction::constant(num);
  }
};

}  // namespace

ExprFunction parse_latent(const std::string& src) { return LatentParser(src).parse(); }

}  // namespace perioctrl
