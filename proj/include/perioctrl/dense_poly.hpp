#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace perioctrl {

/// Dense univariate polynomial over a field K, coefficients stored in
/// ascending powers with a nonzero leading coefficient (empty = zero
/// polynomial). K must provide +, -, *, inv(), is_zero(), is_one(), ==.
template <class K>
class DensePoly {
public:
  DensePoly() = default;
  explicit DensePoly(K c) {
    if (!c.is_zero()) coeffs_.push_back(std::move(c));
  }
  explicit DensePoly(std::vector<K> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static DensePoly zero() { return DensePoly(); }
  static DensePoly one() { return monomial(K(1), 0); }
  static DensePoly variable() { return monomial(K(1), 1); }
  static DensePoly monomial(K c, std::size_t e) {
    DensePoly p;
    if (c.is_zero()) return p;
    p.coeffs_.assign(e + 1, K());
    p.coeffs_[e] = std::move(c);
    return p;
  }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_monomial() const {
    if (coeffs_.empty()) return false;
    for (std::size_t k = 0; k + 1 < coeffs_.size(); ++k)
      if (!coeffs_[k].is_zero()) return false;
    return true;
  }

  /// Degree of the zero polynomial is not a number; callers must branch.
  std::optional<int> degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return static_cast<int>(coeffs_.size()) - 1;
  }
  /// Index of the lowest nonzero coefficient; 0 for the zero polynomial.
  std::size_t valuation() const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      if (!coeffs_[k].is_zero()) return k;
    return 0;
  }

  const K& coeff(std::size_t k) const {
    static const K kZero{};
    return k < coeffs_.size() ? coeffs_[k] : kZero;
  }
  const K& leading() const {
    if (coeffs_.empty()) throw std::domain_error("DensePoly: zero polynomial has no leading coefficient");
    return coeffs_.back();
  }
  const std::vector<K>& coeffs() const { return coeffs_; }

  DensePoly operator-() const {
    DensePoly r(*this);
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  DensePoly operator+(const DensePoly& o) const {
    DensePoly r;
    r.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t k = 0; k < r.coeffs_.size(); ++k) r.coeffs_[k] = coeff(k) + o.coeff(k);
    r.trim();
    return r;
  }
  DensePoly operator-(const DensePoly& o) const {
    DensePoly r;
    r.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t k = 0; k < r.coeffs_.size(); ++k) r.coeffs_[k] = coeff(k) - o.coeff(k);
    r.trim();
    return r;
  }
  DensePoly operator*(const DensePoly& o) const {
    if (is_zero() || o.is_zero()) return DensePoly();
    DensePoly r;
    r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, K());
    for (std::size_t a = 0; a < coeffs_.size(); ++a) {
      if (coeffs_[a].is_zero()) continue;
      for (std::size_t b = 0; b < o.coeffs_.size(); ++b)
        r.coeffs_[a + b] += coeffs_[a] * o.coeffs_[b];
    }
    r.trim();
    return r;
  }
  DensePoly& operator+=(const DensePoly& o) { *this = *this + o; return *this; }
  DensePoly& operator-=(const DensePoly& o) { *this = *this - o; return *this; }
  DensePoly& operator*=(const DensePoly& o) { *this = *this * o; return *this; }

  DensePoly scaled(const K& c) const {
    if (c.is_zero()) return DensePoly();
    DensePoly r(*this);
    for (auto& x : r.coeffs_) x = x * c;
    r.trim();
    return r;
  }

  /// Drops the lowest `e` powers; requires valuation() >= e.
  DensePoly shifted_down(std::size_t e) const {
    if (e == 0) return *this;
    DensePoly r;
    if (coeffs_.size() > e) r.coeffs_.assign(coeffs_.begin() + static_cast<long>(e), coeffs_.end());
    return r;
  }

  DensePoly made_monic() const {
    if (is_zero()) throw std::domain_error("DensePoly: cannot normalize the zero polynomial");
    if (leading().is_one()) return *this;
    return scaled(leading().inv());
  }

  /// Euclidean division: a = q*b + r with deg r < deg b. Throws on b = 0.
  static std::pair<DensePoly, DensePoly> divmod(const DensePoly& a, const DensePoly& b) {
    if (b.is_zero()) throw std::domain_error("DensePoly: division by zero polynomial");
    DensePoly q, r(a);
    const std::size_t db = b.coeffs_.size() - 1;
    if (r.coeffs_.size() > db) q.coeffs_.assign(r.coeffs_.size() - db, K());
    K lead_inv = b.leading().inv();
    while (!r.is_zero() && r.coeffs_.size() - 1 >= db) {
      std::size_t shift = r.coeffs_.size() - 1 - db;
      K c = r.leading() * lead_inv;
      q.coeffs_[shift] = c;
      for (std::size_t k = 0; k <= db; ++k) {
        if (b.coeffs_[k].is_zero()) continue;
        r.coeffs_[k + shift] = r.coeffs_[k + shift] - c * b.coeffs_[k];
      }
      r.trim();
    }
    q.trim();
    return {q, r};
  }

  /// True iff b divides a exactly.
  static bool divides(const DensePoly& b, const DensePoly& a) {
    if (a.is_zero()) return true;
    return divmod(a, b).second.is_zero();
  }

  /// Monic gcd via the Euclidean remainder sequence, with every remainder
  /// renormalized to monic form to bound coefficient growth.
  static DensePoly gcd(DensePoly a, DensePoly b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("DensePoly: gcd(0, 0) is undefined");
    if (a.is_zero()) return b.made_monic();
    if (b.is_zero()) return a.made_monic();
    a = a.made_monic();
    b = b.made_monic();
    while (!b.is_zero()) {
      DensePoly r = divmod(a, b).second;
      a = std::move(b);
      b = r.is_zero() ? std::move(r) : r.made_monic();
    }
    return a;
  }

  DensePoly derivative() const {
    DensePoly r;
    if (coeffs_.size() <= 1) return r;
    r.coeffs_.resize(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
      r.coeffs_[k - 1] = coeffs_[k] * K(static_cast<long>(k));
    r.trim();
    return r;
  }

  /// Horner evaluation.
  K eval(const K& x) const {
    K acc{};
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
    return acc;
  }

  bool operator==(const DensePoly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const DensePoly& o) const { return !(*this == o); }

private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::vector<K> coeffs_;
};

}  // namespace perioctrl
