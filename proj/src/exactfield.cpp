#include "perioctrl/exactfield.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace perioctrl {

namespace {

/// Gaussian integer with GMP components; the coefficient domain for the
/// subresultant remainder sequence.
struct GaussInt {
  Integer re, im;
  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool operator==(const GaussInt& o) const { return re == o.re && im == o.im; }
};

GaussInt gi_one() { return {Integer(1), Integer(0)}; }

GaussInt gi_mul(const GaussInt& a, const GaussInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

/// Exact quotient a / b in Z[i]; only called where the theory guarantees
/// divisibility, so divexact is safe.
GaussInt gi_divexact(const GaussInt& a, const GaussInt& b) {
  Integer n = b.re * b.re + b.im * b.im;
  GaussInt t = gi_mul(a, {b.re, Integer(-b.im)});
  GaussInt q;
  mpz_divexact(q.re.get_mpz_t(), t.re.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(q.im.get_mpz_t(), t.im.get_mpz_t(), n.get_mpz_t());
  return q;
}

GaussInt gi_pow(GaussInt b, unsigned e) {
  GaussInt r = gi_one();
  for (; e; e >>= 1) {
    if (e & 1) r = gi_mul(r, b);
    if (e > 1) b = gi_mul(b, b);
  }
  return r;
}

/// Z[i] polynomial in ascending powers with nonzero leading coefficient.
using ZiPoly = std::vector<GaussInt>;

void zi_trim(ZiPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int zi_deg(const ZiPoly& p) { return static_cast<int>(p.size()) - 1; }

/// Nonnegative gcd of every integer component; the rational-integer content.
Integer zi_content(const ZiPoly& p) {
  Integer g(0);
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.re.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.im.get_mpz_t());
  }
  return g;
}

void zi_remove_content(ZiPoly& p) {
  Integer g = zi_content(p);
  if (g <= 1) return;
  for (auto& c : p) {
    mpz_divexact(c.re.get_mpz_t(), c.re.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(c.im.get_mpz_t(), c.im.get_mpz_t(), g.get_mpz_t());
  }
}

/// Clears denominators and strips integer content; the primitive scaling
/// keeps the remainder sequence in Z[i].
ZiPoly to_zi(const PiPoly& p) {
  Integer L(1);
  for (const auto& c : p.coeffs()) {
    Integer dr = c.re().denominator(), di = c.im().denominator();
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), dr.get_mpz_t());
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), di.get_mpz_t());
  }
  ZiPoly r(p.coeffs().size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    const GaussianRational& c = p.coeffs()[k];
    r[k].re = c.re().numerator() * (L / c.re().denominator());
    r[k].im = c.im().numerator() * (L / c.im().denominator());
  }
  zi_remove_content(r);
  return r;
}

/// Pseudo-remainder lead(b)^(deg a - deg b + 1) * a mod b, staying in Z[i].
ZiPoly zi_prem(ZiPoly r, const ZiPoly& b) {
  const GaussInt lb = b.back();
  const int db = zi_deg(b);
  int e = zi_deg(r) - db + 1;
  while (!r.empty() && zi_deg(r) >= db) {
    GaussInt lr = r.back();
    std::size_t shift = static_cast<std::size_t>(zi_deg(r) - db);
    ZiPoly nr(r.size() - 1);  // the top coefficient cancels by construction
    for (std::size_t k = 0; k + 1 < r.size(); ++k) nr[k] = gi_mul(r[k], lb);
    for (std::size_t k = 0; k + 1 < b.size(); ++k) {
      GaussInt s = gi_mul(lr, b[k]);
      nr[shift + k].re -= s.re;
      nr[shift + k].im -= s.im;
    }
    zi_trim(nr);
    r = std::move(nr);
    --e;
  }
  if (e > 0 && !r.empty()) {
    GaussInt m = gi_pow(lb, static_cast<unsigned>(e));
    for (auto& c : r) c = gi_mul(c, m);
  }
  return r;
}

PiPoly zi_to_pipoly(const ZiPoly& p) {
  PiPoly r;
  for (std::size_t k = 0; k < p.size(); ++k) {
    GaussianRational c(Rational(p[k].re), Rational(p[k].im));
    if (!c.is_zero()) r = r + PiPoly::monomial(c, k);
  }
  return r;
}

/// Nearest-integer quotient for b > 0.
Integer round_div(const Integer& a, const Integer& b) {
  Integer q;
  Integer num = 2 * a + b, den = 2 * b;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

/// Euclidean gcd in Z[i] (any associate).
GaussInt gi_gcd(GaussInt u, GaussInt v) {
  while (!v.is_zero()) {
    Integer n = v.re * v.re + v.im * v.im;
    GaussInt t = gi_mul(u, {v.re, Integer(-v.im)});
    GaussInt q{round_div(t.re, n), round_div(t.im, n)};
    GaussInt r{u.re - (q.re * v.re - q.im * v.im), u.im - (q.re * v.im + q.im * v.re)};
    u = v;
    v = std::move(r);
  }
  return u;
}

// ---------------------------------------------------------------------------
// Small-primes modular gcd. Z[i] maps onto F_p twice for p = 1 (mod 4), by
// sending i to either square root of -1; the pair of images recovers the
// Gaussian coefficients mod p. The gcd degree can only grow under reduction
// (for primes that keep the leading coefficients alive), so a constant image
// certifies coprimality outright, and otherwise a CRT-lifted candidate that
// divides both inputs is the gcd. Unlucky primes are weeded out by degree
// minimization and the final divisibility check.

unsigned long zp_mul(unsigned long a, unsigned long b, unsigned long p) { return a * b % p; }

unsigned long zp_pow(unsigned long b, unsigned long e, unsigned long p) {
  unsigned long r = 1;
  for (; e; e >>= 1) {
    if (e & 1) r = zp_mul(r, b, p);
    b = zp_mul(b, b, p);
  }
  return r;
}

bool is_prime_u32(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long q : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  unsigned long d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (unsigned long a : {2UL, 7UL, 61UL}) {  // deterministic below 2^32
    unsigned long x = zp_pow(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = zp_mul(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

struct ModPrime {
  unsigned long p;
  unsigned long i;  // square root of -1 mod p
};

constexpr std::size_t kMaxPrimes = 24;

/// Shared table of primes p = 1 (mod 4) with a square root of -1; built once
/// (magic-static init), so concurrent gcd calls may read it freely.
const std::vector<ModPrime>& prime_table() {
  static const std::vector<ModPrime> table = [] {
    std::vector<ModPrime> t;
    for (unsigned long p = 1073741827UL; t.size() < kMaxPrimes; p += 2) {
      if (p % 4 != 1 || !is_prime_u32(p)) continue;
      unsigned long im = 0;
      for (unsigned long n = 2; n < 100; ++n) {
        if (zp_pow(n, (p - 1) / 2, p) == p - 1) {
          im = zp_pow(n, (p - 1) / 4, p);
          break;
        }
      }
      if (im == 0 || zp_mul(im, im, p) != p - 1) continue;
      t.push_back({p, im});
    }
    return t;
  }();
  return table;
}

using ZpPoly = std::vector<unsigned long>;

/// Image of a Z[i] polynomial under i -> I mod p; empty result signals a
/// dead leading coefficient (the prime must then be skipped).
ZpPoly zp_reduce(const ZiPoly& q, unsigned long p, unsigned long I) {
  ZpPoly r(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) {
    unsigned long re = mpz_fdiv_ui(q[k].re.get_mpz_t(), p);
    unsigned long im = mpz_fdiv_ui(q[k].im.get_mpz_t(), p);
    r[k] = (re + zp_mul(I, im, p)) % p;
  }
  if (!r.empty() && r.back() == 0) r.clear();
  return r;
}

/// Monic gcd in F_p[x]; constants collapse to {1}.
ZpPoly zp_gcd(ZpPoly a, ZpPoly b, unsigned long p) {
  while (!b.empty()) {
    unsigned long inv = zp_pow(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
      unsigned long q = zp_mul(a.back(), inv, p);
      std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k + 1 < b.size(); ++k) {
        unsigned long s = zp_mul(q, b[k], p);
        a[shift + k] = (a[shift + k] + p - s) % p;
      }
      a.pop_back();
      while (!a.empty() && a.back() == 0) a.pop_back();
    }
    std::swap(a, b);
  }
  unsigned long inv = zp_pow(a.back(), p - 2, p);
  for (auto& c : a) c = zp_mul(c, inv, p);
  return a;
}

/// One Gaussian residue held as nonnegative components mod the accumulated
/// modulus M.
struct CrtCoeff {
  Integer re, im;
};

void crt_merge(Integer& c, unsigned long r, const Integer& M, unsigned long p,
               unsigned long Minv_p) {
  unsigned long cm = mpz_fdiv_ui(c.get_mpz_t(), p);
  unsigned long t = zp_mul((r + p - cm) % p, Minv_p, p);
  c += M * static_cast<long>(t);
}

Integer balanced(const Integer& c, const Integer& M) {
  if (2 * c > M) return c - M;
  return c;
}

/// Modular gcd attempt; nullopt means fall back to the subresultant path.
std::optional<ZiPoly> modular_gcd(const ZiPoly& A, const ZiPoly& B) {
  const GaussInt gamma = gi_gcd(A.back(), B.back());
  std::vector<CrtCoeff> acc;
  Integer M(1);
  int deg_min = -1;
  ZiPoly prev_candidate;

  for (const ModPrime& mp : prime_table()) {
    const unsigned long p = mp.p;
    const unsigned long I1 = mp.i, I2 = p - mp.i;

    ZpPoly a1 = zp_reduce(A, p, I1), b1 = zp_reduce(B, p, I1);
    ZpPoly a2 = zp_reduce(A, p, I2), b2 = zp_reduce(B, p, I2);
    if (a1.empty() || b1.empty() || a2.empty() || b2.empty()) continue;
    ZpPoly g1 = zp_gcd(std::move(a1), std::move(b1), p);
    ZpPoly g2 = zp_gcd(std::move(a2), std::move(b2), p);
    if (g1.size() != g2.size()) continue;  // unlucky for one ideal
    int d = static_cast<int>(g1.size()) - 1;
    if (d == 0) return ZiPoly{gi_one()};  // certified coprime

    // Scale the monic images by gamma so they match a true Z[i] polynomial
    // (the leading coefficient of the gcd divides gamma).
    unsigned long gre = mpz_fdiv_ui(gamma.re.get_mpz_t(), p);
    unsigned long gim = mpz_fdiv_ui(gamma.im.get_mpz_t(), p);
    unsigned long gp1 = (gre + zp_mul(I1, gim, p)) % p;
    unsigned long gp2 = (gre + zp_mul(I2, gim, p)) % p;
    if (gp1 == 0 || gp2 == 0) continue;
    for (auto& c : g1) c = zp_mul(c, gp1, p);
    for (auto& c : g2) c = zp_mul(c, gp2, p);

    if (deg_min < 0 || d < deg_min) {
      // First usable prime, or all previous primes were unlucky.
      deg_min = d;
      M = 1;
      acc.assign(static_cast<std::size_t>(d) + 1, CrtCoeff{});
      prev_candidate.clear();
    } else if (d > deg_min) {
      continue;
    }

    // Recover re/im mod p from the pair of images and fold into the CRT
    // accumulator: re = (x + y)/2, im = (x - y)/(2*I1).
    unsigned long inv2 = zp_pow(2, p - 2, p);
    unsigned long inv2i = zp_pow(zp_mul(2, I1, p), p - 2, p);
    unsigned long Minv_p = zp_pow(mpz_fdiv_ui(M.get_mpz_t(), p), p - 2, p);
    for (std::size_t k = 0; k < acc.size(); ++k) {
      unsigned long x = g1[k], y = g2[k];
      unsigned long re = zp_mul((x + y) % p, inv2, p);
      unsigned long im = zp_mul((x + p - y) % p, inv2i, p);
      crt_merge(acc[k].re, re, M, p, Minv_p);
      crt_merge(acc[k].im, im, M, p, Minv_p);
    }
    M *= static_cast<long>(p);

    ZiPoly candidate(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k)
      candidate[k] = {balanced(acc[k].re, M), balanced(acc[k].im, M)};
    zi_trim(candidate);
    if (candidate.empty() || zi_deg(candidate) != deg_min) continue;
    zi_remove_content(candidate);
    if (candidate != prev_candidate) {
      prev_candidate = candidate;
      continue;
    }
    // Stable across consecutive primes: accept on exact divisibility.
    if (zi_prem(A, candidate).empty() && zi_prem(B, candidate).empty()) return candidate;
  }
  return std::nullopt;
}

}  // namespace

template <>
DensePoly<GaussianRational> DensePoly<GaussianRational>::gcd(DensePoly<GaussianRational> a,
                                                             DensePoly<GaussianRational> b) {
  if (a.is_zero() && b.is_zero())
    throw std::domain_error("DensePoly: gcd(0, 0) is undefined");
  if (a.is_zero()) return b.made_monic();
  if (b.is_zero()) return a.made_monic();
  if (a.is_constant() || b.is_constant()) return one();

  ZiPoly A = to_zi(a), B = to_zi(b);
  if (zi_deg(A) < zi_deg(B)) std::swap(A, B);

  // The lifted candidate is verified against both inputs, so a modular hit
  // is exact; only pathological prime runs fall through to the slow path.
  if (std::optional<ZiPoly> mg = modular_gcd(A, B)) return zi_to_pipoly(*mg).made_monic();

  // Brown's subresultant sequence: every division below is exact in Z[i],
  // which bounds the coefficient growth the monic sequence suffers from.
  GaussInt g = gi_one(), h = gi_one();
  for (;;) {
    int delta = zi_deg(A) - zi_deg(B);
    ZiPoly R = zi_prem(A, B);
    if (R.empty()) break;
    if (zi_deg(R) == 0) return one();
    A = std::move(B);
    GaussInt div = gi_mul(g, gi_pow(h, static_cast<unsigned>(delta)));
    B.assign(R.size(), GaussInt{});
    for (std::size_t k = 0; k < R.size(); ++k) B[k] = gi_divexact(R[k], div);
    g = A.back();
    if (delta == 1)
      h = g;
    else if (delta > 1)
      h = gi_divexact(gi_pow(g, static_cast<unsigned>(delta)),
                      gi_pow(h, static_cast<unsigned>(delta - 1)));
  }
  zi_remove_content(B);
  return zi_to_pipoly(B).made_monic();
}

}  // namespace perioctrl
