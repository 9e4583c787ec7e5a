#pragma once

#include <stdexcept>
#include <utility>

#include "perioctrl/dense_poly.hpp"

namespace perioctrl {

/// Field of fractions of a polynomial ring P = DensePoly<K>. Canonical form:
/// numerator and denominator coprime, denominator monic.
template <class P>
class Fraction {
public:
  using Coeff = typename std::decay_t<decltype(std::declval<P>().coeff(0))>;

  Fraction() : num_(), den_(P::one()) {}
  Fraction(long v) : num_(P(Coeff(v))), den_(P::one()) {}
  explicit Fraction(P num) : num_(std::move(num)), den_(P::one()) {}
  Fraction(P num, P den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("Fraction: zero denominator");
    reduce();
  }

  const P& num() const { return num_; }
  const P& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  Fraction operator-() const {
    Fraction r(*this);
    r.num_ = -r.num_;
    return r;
  }
  Fraction operator+(const Fraction& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) return Fraction(num_ + o.num_, den_);
    return Fraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  Fraction operator-(const Fraction& o) const {
    if (o.is_zero()) return *this;
    if (den_ == o.den_) return Fraction(num_ - o.num_, den_);
    return Fraction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  Fraction operator*(const Fraction& o) const {
    if (is_zero() || o.is_zero()) return Fraction();
    if (is_one()) return o;
    if (o.is_one()) return *this;
    return Fraction(num_ * o.num_, den_ * o.den_);
  }
  Fraction& operator+=(const Fraction& o) { *this = *this + o; return *this; }
  Fraction& operator-=(const Fraction& o) { *this = *this - o; return *this; }
  Fraction& operator*=(const Fraction& o) { *this = *this * o; return *this; }

  Fraction inv() const {
    if (is_zero()) throw std::domain_error("Fraction: inverse of zero");
    return Fraction(den_, num_);
  }
  Fraction operator/(const Fraction& o) const {
    if (o.is_zero()) throw std::domain_error("Fraction: division by zero");
    return Fraction(num_ * o.den_, den_ * o.num_);
  }

  Fraction pow(unsigned e) const {
    Fraction acc(1), base(*this);
    while (e) {
      if (e & 1u) acc *= base;
      base *= base;
      e >>= 1u;
    }
    return acc;
  }

  bool operator==(const Fraction& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Fraction& o) const { return !(*this == o); }

private:
  void reduce() {
    if (num_.is_zero()) {
      den_ = P::one();
      return;
    }
    // Shared powers of the variable cancel without a gcd pass.
    std::size_t v = std::min(num_.valuation(), den_.valuation());
    if (v > 0) {
      num_ = num_.shifted_down(v);
      den_ = den_.shifted_down(v);
    }
    if (!den_.is_constant() && !num_.is_constant() && !den_.is_monomial() && !num_.is_monomial()) {
      P g = P::gcd(num_, den_);
      if (!g.is_one()) {
        num_ = P::divmod(num_, g).first;
        den_ = P::divmod(den_, g).first;
      }
    }
    if (!den_.leading().is_one()) {
      Coeff s = den_.leading().inv();
      num_ = num_.scaled(s);
      den_ = den_.scaled(s);
    }
  }

  P num_;
  P den_;
};

}  // namespace perioctrl
