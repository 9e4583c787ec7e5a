#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "perioctrl/gaussian.hpp"

namespace perioctrl {

/// Sparse multivariate polynomial over Q(i). The variable set is positional:
/// the matrix input language uses (x1..xd, t) with t last; the generic
/// frequency analysis adjoins extra symbols. No zero coefficient is stored.
class MultiPoly {
public:
  using ExpVec = std::vector<unsigned>;
  using TermMap = std::map<ExpVec, GaussianRational>;

  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const GaussianRational& c) {
    MultiPoly p(nvars);
    p.add_term(ExpVec(nvars, 0), c);
    return p;
  }
  static MultiPoly variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw std::invalid_argument("MultiPoly: variable index out of range");
    MultiPoly p(nvars);
    ExpVec e(nvars, 0);
    e[index] = 1;
    p.add_term(e, GaussianRational(1));
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  void add_term(const ExpVec& exps, const GaussianRational& c) {
    if (exps.size() != nvars_) throw std::invalid_argument("MultiPoly: exponent vector length mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
      terms_.emplace(exps, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const GaussianRational& coeff(const ExpVec& exps) const {
    static const GaussianRational kZero{};
    auto it = terms_.find(exps);
    return it == terms_.end() ? kZero : it->second;
  }

  /// Highest exponent of one variable; -1 for the zero polynomial.
  int degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
    return d;
  }

  MultiPoly operator-() const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  MultiPoly operator+(const MultiPoly& o) const {
    check_arity(o);
    MultiPoly r(*this);
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }
  MultiPoly operator-(const MultiPoly& o) const {
    check_arity(o);
    MultiPoly r(*this);
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
  }
  MultiPoly operator*(const MultiPoly& o) const {
    check_arity(o);
    MultiPoly r(nvars_);
    for (const auto& [ea, ca] : terms_) {
      for (const auto& [eb, cb] : o.terms_) {
        ExpVec e(nvars_);
        for (std::size_t k = 0; k < nvars_; ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  MultiPoly& operator+=(const MultiPoly& o) { *this = *this + o; return *this; }
  MultiPoly& operator-=(const MultiPoly& o) { *this = *this - o; return *this; }
  MultiPoly& operator*=(const MultiPoly& o) { *this = *this * o; return *this; }

  MultiPoly scaled(const GaussianRational& c) const {
    MultiPoly r(nvars_);
    if (c.is_zero()) return r;
    for (const auto& [e, x] : terms_) r.terms_.emplace(e, x * c);
    return r;
  }

  MultiPoly pow(unsigned k) const {
    MultiPoly acc = constant(nvars_, GaussianRational(1));
    MultiPoly base(*this);
    while (k) {
      if (k & 1u) acc *= base;
      base *= base;
      k >>= 1u;
    }
    return acc;
  }

  bool operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  /// Exact division in the polynomial ring: quotient with a = q * b when it
  /// exists (lex leading-term elimination); returns false when b does not
  /// divide a. b must be nonzero.
  static bool try_divide(const MultiPoly& a, const MultiPoly& b, MultiPoly& quotient) {
    if (b.is_zero()) throw std::domain_error("MultiPoly: division by zero");
    a.check_arity(b);
    MultiPoly q(a.nvars_), rem(a);
    const auto& [be, bc] = *b.terms_.rbegin();
    while (!rem.is_zero()) {
      const auto& [re, rc] = *rem.terms_.rbegin();
      ExpVec e(rem.nvars_);
      for (std::size_t k = 0; k < rem.nvars_; ++k) {
        if (re[k] < be[k]) return false;
        e[k] = re[k] - be[k];
      }
      GaussianRational c = rc * bc.inv();
      MultiPoly t(rem.nvars_);
      t.add_term(e, c);
      q += t;
      rem -= t * b;
    }
    quotient = std::move(q);
    return true;
  }

  std::complex<double> eval(const std::vector<std::complex<double>>& point) const {
    if (point.size() != nvars_) throw std::invalid_argument("MultiPoly: evaluation point arity mismatch");
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [e, c] : terms_) {
      std::complex<double> m = c.to_complex();
      for (std::size_t k = 0; k < nvars_; ++k)
        for (unsigned j = 0; j < e[k]; ++j) m *= point[k];
      acc += m;
    }
    return acc;
  }

private:
  void check_arity(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("MultiPoly: mixed variable counts");
  }

  std::size_t nvars_;
  TermMap terms_;
};

}  // namespace perioctrl
