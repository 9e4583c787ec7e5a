#include "perioctrl/unipoly.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace perioctrl {

namespace {

// The gcd and extended-gcd walks below run over Z[i][pi][tau]: all rational
// denominators are cleared once up front, every intermediate is held with
// plain integer components, and Brown's subresultant corrections keep the
// growth bounded. Compared to running the same recurrence over F, this
// removes the mpq canonicalization that otherwise dominates the cost.

/// Gaussian integer pair.
struct GInt {
  Integer re, im;
  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

GInt gi_mul(const GInt& a, const GInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

/// Exact quotient a / b in Z[i]; a nonzero remainder means the subresultant
/// bookkeeping is broken, so exactness is checked.
GInt gi_divexact(const GInt& a, const GInt& b) {
  Integer n = b.re * b.re + b.im * b.im;
  Integer tre = a.re * b.re + a.im * b.im;
  Integer tim = a.im * b.re - a.re * b.im;
  GInt q;
  Integer r;
  mpz_tdiv_qr(q.re.get_mpz_t(), r.get_mpz_t(), tre.get_mpz_t(), n.get_mpz_t());
  if (sgn(r) != 0) throw std::logic_error("unipoly: inexact subresultant division");
  mpz_tdiv_qr(q.im.get_mpz_t(), r.get_mpz_t(), tim.get_mpz_t(), n.get_mpz_t());
  if (sgn(r) != 0) throw std::logic_error("unipoly: inexact subresultant division");
  return q;
}

/// Z[i][pi], ascending powers, trimmed (empty = zero).
using GPoly = std::vector<GInt>;

void gp_trim(GPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

GPoly gp_one() { return {GInt{Integer(1), Integer(0)}}; }

bool gp_is_one(const GPoly& p) {
  return p.size() == 1 && p[0].re == 1 && sgn(p[0].im) == 0;
}

GPoly gp_mul(const GPoly& a, const GPoly& b) {
  if (a.empty() || b.empty()) return {};
  GPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      r[i + j].re += a[i].re * b[j].re - a[i].im * b[j].im;
      r[i + j].im += a[i].re * b[j].im + a[i].im * b[j].re;
    }
  }
  gp_trim(r);
  return r;
}

GPoly gp_add(const GPoly& a, const GPoly& b) {
  GPoly r(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k];
  for (std::size_t k = 0; k < b.size(); ++k) {
    r[k].re += b[k].re;
    r[k].im += b[k].im;
  }
  gp_trim(r);
  return r;
}

GPoly gp_sub(const GPoly& a, const GPoly& b) {
  GPoly r(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k];
  for (std::size_t k = 0; k < b.size(); ++k) {
    r[k].re -= b[k].re;
    r[k].im -= b[k].im;
  }
  gp_trim(r);
  return r;
}

GPoly gp_pow(const GPoly& b, int e) {
  GPoly r = gp_one();
  for (; e > 0; --e) r = gp_mul(r, b);
  return r;
}

/// Exact division in Z[i][pi] by long division; every leading step of an
/// exact division is itself exact, and the final remainder must vanish.
GPoly gp_divexact(const GPoly& a, const GPoly& d) {
  if (a.empty()) return {};
  if (gp_is_one(d)) return a;
  if (d.empty() || a.size() < d.size())
    throw std::logic_error("unipoly: inexact subresultant division");
  GPoly r = a, q(a.size() - d.size() + 1);
  while (r.size() >= d.size()) {
    GInt c = gi_divexact(r.back(), d.back());
    std::size_t shift = r.size() - d.size();
    for (std::size_t k = 0; k + 1 < d.size(); ++k) {
      GInt s = gi_mul(c, d[k]);
      r[shift + k].re -= s.re;
      r[shift + k].im -= s.im;
    }
    r.pop_back();  // the top coefficient cancels by construction
    gp_trim(r);
    q[shift] = std::move(c);
  }
  if (!r.empty()) throw std::logic_error("unipoly: inexact subresultant division");
  return q;
}

/// Z[i][pi][tau], tau-ascending, trimmed; an empty GPoly slot is a zero
/// tau-coefficient.
using GBiv = std::vector<GPoly>;

void gb_trim(GBiv& a) {
  while (!a.empty() && a.back().empty()) a.pop_back();
}

int gb_deg(const GBiv& a) { return static_cast<int>(a.size()) - 1; }

GBiv gb_scale(const GBiv& a, const GPoly& m) {
  GBiv r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!a[k].empty()) r[k] = gp_mul(a[k], m);
  return r;
}

GBiv gb_sub(const GBiv& a, const GBiv& b) {
  GBiv r(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < r.size(); ++k) {
    const GPoly* pa = k < a.size() ? &a[k] : nullptr;
    const GPoly* pb = k < b.size() ? &b[k] : nullptr;
    if (pa && pb)
      r[k] = gp_sub(*pa, *pb);
    else if (pa)
      r[k] = *pa;
    else if (pb) {
      r[k] = *pb;
      for (GInt& c : r[k]) {
        c.re = -c.re;
        c.im = -c.im;
      }
    }
  }
  gb_trim(r);
  return r;
}

GBiv gb_mul(const GBiv& a, const GBiv& b) {
  if (a.empty() || b.empty()) return {};
  GBiv r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].empty()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].empty()) continue;
      r[i + j] = gp_add(r[i + j], gp_mul(a[i], b[j]));
    }
  }
  return r;
}

GBiv gb_divexact(const GBiv& a, const GPoly& d) {
  if (gp_is_one(d)) return a;
  GBiv r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!a[k].empty()) r[k] = gp_divexact(a[k], d);
  return r;
}

/// lead(b)^(deg a - deg b + 1) * a = q*b + r, multiplication-only.
std::pair<GBiv, GBiv> gb_pseudo_divmod(const GBiv& a, const GBiv& b) {
  const GPoly& lb = b.back();
  const int db = gb_deg(b);
  int e = gb_deg(a) - db + 1;
  GBiv q, r = a;
  while (!r.empty() && gb_deg(r) >= db) {
    std::size_t shift = static_cast<std::size_t>(gb_deg(r) - db);
    GPoly c = r.back();
    q = gb_scale(q, lb);
    if (q.size() < shift + 1) q.resize(shift + 1);
    q[shift] = q[shift].empty() ? c : gp_add(q[shift], c);
    GBiv rn(r.size() - 1);  // the top coefficient cancels by construction
    for (std::size_t k = 0; k + 1 < r.size(); ++k)
      if (!r[k].empty()) rn[k] = gp_mul(r[k], lb);
    for (std::size_t k = 0; k + 1 < b.size(); ++k)
      if (!b[k].empty()) rn[shift + k] = gp_sub(rn[shift + k], gp_mul(c, b[k]));
    gb_trim(rn);
    r = std::move(rn);
    --e;
  }
  if (e > 0) {
    GPoly m = gp_pow(lb, e);
    q = gb_scale(q, m);
    r = gb_scale(r, m);
  }
  return {std::move(q), std::move(r)};
}

PiPoly pipoly_lcm(const PiPoly& a, const PiPoly& b) {
  if (a.is_one()) return b.made_monic();
  if (b.is_one()) return a.made_monic();
  PiPoly g = PiPoly::gcd(a, b);
  return (a * PiPoly::divmod(b, g).first).made_monic();
}

/// Integer image of p: all field-level and rational denominators are cleared
/// at once. When `scale` is requested it receives the Z[i][pi] multiplier W
/// such that the image equals W * p over F.
GBiv to_biv(const UniPoly& p, GPoly* scale) {
  PiPoly D = PiPoly::one();
  for (const FieldElement& c : p.coeffs())
    if (!c.is_zero() && !c.den().is_one()) D = pipoly_lcm(D, c.den());

  std::vector<PiPoly> nums(p.coeffs().size());
  Integer L(1);
  auto fold_dens = [&L](const PiPoly& q) {
    for (const GaussianRational& gc : q.coeffs()) {
      Integer dr = gc.re().denominator(), di = gc.im().denominator();
      mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), dr.get_mpz_t());
      mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), di.get_mpz_t());
    }
  };
  for (std::size_t k = 0; k < nums.size(); ++k) {
    const FieldElement& c = p.coeffs()[k];
    if (c.is_zero()) continue;
    nums[k] = c.den().is_one() ? c.num() : c.num() * PiPoly::divmod(D, c.den()).first;
    fold_dens(nums[k]);
  }
  if (scale) fold_dens(D);

  auto lift = [&L](const PiPoly& q) {
    GPoly row(q.coeffs().size());
    for (std::size_t j = 0; j < row.size(); ++j) {
      const GaussianRational& gc = q.coeffs()[j];
      row[j].re = gc.re().numerator() * (L / gc.re().denominator());
      row[j].im = gc.im().numerator() * (L / gc.im().denominator());
    }
    return row;
  };
  GBiv r(nums.size());
  for (std::size_t k = 0; k < nums.size(); ++k) r[k] = lift(nums[k]);
  gb_trim(r);
  if (scale) *scale = lift(D);
  return r;
}

UniPoly from_biv(const GBiv& a) {
  std::vector<FieldElement> cs(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].empty()) continue;
    std::vector<GaussianRational> row(a[k].size());
    for (std::size_t j = 0; j < a[k].size(); ++j)
      row[j] = GaussianRational(Rational(a[k][j].re), Rational(a[k][j].im));
    cs[k] = FieldElement(PiPoly(std::move(row)));
  }
  return UniPoly(std::move(cs));
}

/// Brown's subresultant remainder walk; requires deg A >= deg B >= 1.
/// Returns the last nonzero remainder (content not stripped), or a constant
/// when the operands are coprime.
GBiv biv_gcd_core(GBiv A, GBiv B) {
  GPoly g = gp_one(), h = gp_one();
  for (;;) {
    int delta = gb_deg(A) - gb_deg(B);
    GBiv R = gb_pseudo_divmod(A, B).second;
    if (R.empty()) break;
    if (gb_deg(R) == 0) return {gp_one()};
    A = std::move(B);
    GPoly div = gp_mul(g, gp_pow(h, delta));
    B = gb_divexact(R, div);
    g = A.back();
    if (delta == 1)
      h = g;
    else if (delta > 1)
      h = gp_divexact(gp_pow(g, delta), gp_pow(h, delta - 1));
  }
  return B;
}

}  // namespace

template <>
UniPoly DensePoly<FieldElement>::gcd(UniPoly a, UniPoly b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("DensePoly: gcd(0, 0) is undefined");
  if (a.is_zero()) return b.made_monic();
  if (b.is_zero()) return a.made_monic();
  if (a.is_constant() || b.is_constant()) return one();

  GBiv A = to_biv(a, nullptr), B = to_biv(b, nullptr);
  if (gb_deg(A) < gb_deg(B)) std::swap(A, B);
  GBiv G = biv_gcd_core(std::move(A), std::move(B));
  if (gb_deg(G) == 0) return one();
  return from_biv(G).made_monic();
}

ExtendedGcd extended_gcd(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero())
    throw std::domain_error("extended_gcd: operands must be nonzero");

  // Cofactor triples ride along the remainder walk: the g*h^delta correction
  // divides the remainder and both cofactors exactly (they are the unique
  // pair of bounded degree), so the whole sequence stays integral.
  GPoly wa, wb;
  GBiv r0 = to_biv(a, &wa), r1 = to_biv(b, &wb);
  GBiv s0 = {std::move(wa)}, s1;
  GBiv t0, t1 = {std::move(wb)};
  if (gb_deg(r0) < gb_deg(r1)) {
    std::swap(r0, r1);
    std::swap(s0, s1);
    std::swap(t0, t1);
  }
  GPoly g = gp_one(), h = gp_one();
  while (!r1.empty()) {
    if (gb_deg(r1) == 0) {
      r0 = std::move(r1);
      s0 = std::move(s1);
      t0 = std::move(t1);
      break;
    }
    int delta = gb_deg(r0) - gb_deg(r1);
    GPoly msc = gp_pow(r1.back(), delta + 1);
    auto [q, r] = gb_pseudo_divmod(r0, r1);
    GBiv s2 = gb_sub(gb_scale(s0, msc), gb_mul(q, s1));
    GBiv t2 = gb_sub(gb_scale(t0, msc), gb_mul(q, t1));
    r0 = std::move(r1);
    s0 = std::move(s1);
    t0 = std::move(t1);
    GPoly div = gp_mul(g, gp_pow(h, delta));
    r1 = gb_divexact(r, div);
    s1 = gb_divexact(s2, div);
    t1 = gb_divexact(t2, div);
    g = r0.back();
    if (delta == 1)
      h = g;
    else if (delta > 1)
      h = gp_divexact(gp_pow(g, delta), gp_pow(h, delta - 1));
  }

  ExtendedGcd out;
  out.g = from_biv(r0);
  out.s = from_biv(s0);
  out.t = from_biv(t0);
  // Strip the content from g alone and report it as the constant: scaling
  // the cofactors too would push fractions back into them.
  PiPoly G;
  for (const FieldElement& c : out.g.coeffs()) {
    if (c.is_zero()) continue;
    G = G.is_zero() ? c.num().made_monic() : PiPoly::gcd(G, c.num());
    if (G.is_one()) break;
  }
  if (!G.is_one()) {
    std::vector<FieldElement> cs(out.g.coeffs().size());
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const FieldElement& c = out.g.coeffs()[k];
      if (!c.is_zero()) cs[k] = FieldElement(PiPoly::divmod(c.num(), G).first);
    }
    out.g = UniPoly(std::move(cs));
  }
  out.c = FieldElement(std::move(G));
  return out;
}

bool poly_divides(const UniPoly& d, const UniPoly& a) {
  if (a.is_zero()) return true;
  if (d.is_zero()) throw std::domain_error("DensePoly: division by zero polynomial");
  if (d.is_constant()) return true;
  if (*a.degree() < *d.degree()) return false;

  GBiv r = to_biv(a, nullptr), B = to_biv(d, nullptr);
  const GPoly& lb = B.back();
  const int db = gb_deg(B);
  while (!r.empty() && gb_deg(r) >= db) {
    std::size_t shift = static_cast<std::size_t>(gb_deg(r) - db);
    GPoly c = r.back();
    GBiv rn(r.size() - 1);  // the top coefficient cancels by construction
    for (std::size_t k = 0; k + 1 < r.size(); ++k)
      if (!r[k].empty()) rn[k] = gp_mul(r[k], lb);
    for (std::size_t k = 0; k + 1 < B.size(); ++k)
      if (!B[k].empty()) rn[shift + k] = gp_sub(rn[shift + k], gp_mul(c, B[k]));
    gb_trim(rn);
    r = std::move(rn);
  }
  return r.empty();
}

}  // namespace perioctrl
