#pragma once

#include <complex>

#include "perioctrl/rational.hpp"

namespace perioctrl {

/// Element of Q(i): re + i*im with both components exact rationals.
class GaussianRational {
public:
  GaussianRational() = default;
  GaussianRational(long n) : re_(n) {}
  GaussianRational(Rational re) : re_(std::move(re)) {}
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_one() const { return re_.is_one() && im_.is_zero(); }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational operator+(const GaussianRational& o) const { return {re_ + o.re_, im_ + o.im_}; }
  GaussianRational operator-(const GaussianRational& o) const { return {re_ - o.re_, im_ - o.im_}; }
  GaussianRational operator*(const GaussianRational& o) const {
    return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
  }
  GaussianRational& operator+=(const GaussianRational& o) { re_ += o.re_; im_ += o.im_; return *this; }
  GaussianRational& operator-=(const GaussianRational& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  GaussianRational& operator*=(const GaussianRational& o) { *this = *this * o; return *this; }

  GaussianRational conj() const { return {re_, -im_}; }

  /// |z|^2 = re^2 + im^2 as an exact rational.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational inv() const {
    if (is_zero()) throw std::domain_error("GaussianRational: division by zero");
    Rational n = norm().inv();
    return {re_ * n, -im_ * n};
  }
  GaussianRational operator/(const GaussianRational& o) const { return *this * o.inv(); }

  GaussianRational pow(unsigned e) const {
    GaussianRational r(1), b(*this);
    for (; e; e >>= 1) {
      if (e & 1) r *= b;
      if (e > 1) b *= b;
    }
    return r;
  }

  bool operator==(const GaussianRational& o) const { return re_ == o.re_ && im_ == o.im_; }
  bool operator!=(const GaussianRational& o) const { return !(*this == o); }

  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

private:
  Rational re_, im_;
};

}  // namespace perioctrl
