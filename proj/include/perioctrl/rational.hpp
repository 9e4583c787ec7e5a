#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace perioctrl {

using Integer = mpz_class;

/// Exact rational number. Canonical form: denominator > 0 and
/// gcd(|numerator|, denominator) = 1, maintained on every operation.
class Rational {
public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}
  explicit Rational(const Integer& n) : q_(n) {}
  Rational(const Integer& n, const Integer& d) {
    if (sgn(d) == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(n, d);
    q_.canonicalize();
  }
  Rational(long n, long d) : Rational(Integer(n), Integer(d)) {}

  /// Parses "p" or "p/q" with optional leading '-'. Throws std::invalid_argument.
  static Rational from_string(const std::string& s) {
    auto bad = [&] { throw std::invalid_argument("Rational: cannot parse \"" + s + "\""); };
    auto slash = s.find('/');
    std::string ns = slash == std::string::npos ? s : s.substr(0, slash);
    std::string ds = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (ns.empty() || ds.empty()) bad();
    if (!is_int_token(ns, true) || !is_int_token(ds, false)) bad();
    Integer n, d;
    if (n.set_str(ns, 10) != 0 || d.set_str(ds, 10) != 0) bad();
    return Rational(n, d);
  }

  Integer numerator() const { return q_.get_num(); }
  Integer denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational operator+(const Rational& o) const { return Rational(mpq_class(q_ + o.q_)); }
  Rational operator-(const Rational& o) const { return Rational(mpq_class(q_ - o.q_)); }
  Rational operator*(const Rational& o) const { return Rational(mpq_class(q_ * o.q_)); }
  Rational operator/(const Rational& o) const {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(mpq_class(q_ / o.q_));
  }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }

  Rational inv() const {
    if (is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(mpq_class(1 / q_));
  }
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational pow(unsigned e) const {
    Rational r(1), b(*this);
    for (; e; e >>= 1) {
      if (e & 1) r *= b;
      if (e > 1) b *= b;
    }
    return r;
  }

  bool operator==(const Rational& o) const { return q_ == o.q_; }
  bool operator!=(const Rational& o) const { return q_ != o.q_; }
  bool operator<(const Rational& o) const { return q_ < o.q_; }
  bool operator<=(const Rational& o) const { return q_ <= o.q_; }
  bool operator>(const Rational& o) const { return q_ > o.q_; }
  bool operator>=(const Rational& o) const { return q_ >= o.q_; }

  double to_double() const { return q_.get_d(); }

  std::string str() const {
    std::string s = q_.get_num().get_str();
    if (q_.get_den() != 1) s += "/" + q_.get_den().get_str();
    return s;
  }

private:
  explicit Rational(mpq_class q) : q_(std::move(q)) {}

  static bool is_int_token(const std::string& s, bool allow_sign) {
    std::size_t i = allow_sign && s[0] == '-' ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  }

  mpq_class q_;  // canonical: den > 0, coprime
};

}  // namespace perioctrl
