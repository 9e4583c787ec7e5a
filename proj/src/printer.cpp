#include "perioctrl/printer.hpp"

#include <algorithm>
#include <json.hpp>

namespace perioctrl {

namespace {

int gaussian_sign(const GaussianRational& c) {
  if (!c.re().is_zero()) return c.re().sign();
  return c.im().sign();
}

/// Factor-position string for a Gaussian coefficient; handles its own sign
/// (a leading '-' stays inside the rational literal, mixed values get
/// parenthesized so the result is always a single valid factor).
std::string gaussian_factor(const GaussianRational& c) {
  const Rational& re = c.re();
  const Rational& im = c.im();
  if (im.is_zero()) return re.str();
  std::string im_part = im.abs().is_one() ? "i" : im.abs().str() + "*i";
  if (re.is_zero()) {
    if (im.sign() > 0) return im.is_one() ? "i" : im.str() + "*i";
    return im.is_one() || (-im).is_one() ? "-1*i" : im.str() + "*i";
  }
  return "(" + re.str() + (im.sign() > 0 ? " + " : " - ") + im_part + ")";
}

struct Term {
  int sign;
  std::string body;  // valid term string for the absolute value
};

std::string join_terms(const std::vector<Term>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (k == 0) {
      out = terms[k].body;
    } else {
      out += terms[k].sign < 0 ? " - " : " + ";
      out += terms[k].body;
    }
  }
  return out;
}

/// One summand "coeff*mono". The first summand keeps its sign folded into the
/// coefficient literal; later summands are emitted positive and joined with
/// '-' as needed.
std::string coeff_mono(const GaussianRational& c, const std::string& mono) {
  if (mono.empty()) return gaussian_factor(c);
  if (c.is_one()) return mono;
  if ((-c).is_one()) return "-1*" + mono;
  return gaussian_factor(c) + "*" + mono;
}

std::vector<Term> pipoly_terms(const PiPoly& p, bool fold_first_sign) {
  std::vector<Term> out;
  for (std::size_t k = p.coeffs().size(); k-- > 0;) {
    const GaussianRational& c = p.coeff(k);
    if (c.is_zero()) continue;
    std::string mono = k == 0 ? "" : (k == 1 ? "pi" : "pi^" + std::to_string(k));
    int s = gaussian_sign(c);
    bool first = out.empty();
    GaussianRational shown = (first && fold_first_sign) || s > 0 ? c : -c;
    out.push_back({s, coeff_mono(shown, mono)});
  }
  return out;
}

std::string pipoly_expr(const PiPoly& p) { return join_terms(pipoly_terms(p, true)); }

int field_sign(const FieldElement& x) {
  if (x.is_zero()) return 0;
  return gaussian_sign(x.num().leading());
}

/// Factor-position string for a field coefficient: a single pi-term stays
/// flat ("4*pi^2"), sums get parenthesized, true fractions print as
/// "(num)/(den)".
std::string field_factor(const FieldElement& x) {
  if (x.is_zero()) return "0";
  if (x.is_polynomial()) {
    const PiPoly& n = x.num();
    if (n.is_monomial()) {
      std::size_t k = static_cast<std::size_t>(*n.degree());
      std::string mono = k == 0 ? "" : (k == 1 ? "pi" : "pi^" + std::to_string(k));
      return coeff_mono(n.leading(), mono);
    }
    return "(" + pipoly_expr(n) + ")";
  }
  return "(" + pipoly_expr(x.num()) + ")/(" + pipoly_expr(x.den()) + ")";
}

std::string field_coeff_mono(const FieldElement& x, const std::string& mono) {
  if (mono.empty()) return field_factor(x);
  if (x.is_one()) return mono;
  return field_factor(x) + "*" + mono;
}

std::string var_power(const std::string& name, unsigned e) {
  if (e == 1) return name;
  return name + "^" + std::to_string(e);
}

/// Shared sum printer for sparse multivariate polynomials. `namer` renders a
/// variable index; `sig` lists variable indices most significant first for
/// the descending term order.
template <class Namer>
std::string multipoly_expr(const MultiPoly& p, const std::vector<std::size_t>& sig, Namer namer) {
  std::vector<const MultiPoly::ExpVec*> keys;
  for (const auto& [e, c] : p.terms()) keys.push_back(&e);
  std::sort(keys.begin(), keys.end(),
            [&sig](const MultiPoly::ExpVec* a, const MultiPoly::ExpVec* b) {
              for (std::size_t v : sig) {
                if ((*a)[v] != (*b)[v]) return (*a)[v] > (*b)[v];
              }
              return false;
            });
  std::vector<Term> terms;
  for (const MultiPoly::ExpVec* e : keys) {
    const GaussianRational& c = p.coeff(*e);
    std::string mono;
    for (std::size_t v : sig) {
      if ((*e)[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += var_power(namer(v), (*e)[v]);
    }
    int s = gaussian_sign(c);
    bool first = terms.empty();
    terms.push_back({s, coeff_mono(first || s > 0 ? c : -c, mono)});
  }
  return join_terms(terms);
}

}  // namespace

std::string print_gaussian(const GaussianRational& c) { return gaussian_factor(c); }

std::string print_pipoly(const PiPoly& p) { return pipoly_expr(p); }

std::string print_field(const FieldElement& x) {
  if (x.is_polynomial() && !x.num().is_monomial() && !x.is_zero()) return pipoly_expr(x.num());
  return field_factor(x);
}

std::string print_unipoly(const UniPoly& p) {
  std::vector<Term> terms;
  for (std::size_t k = p.coeffs().size(); k-- > 0;) {
    const FieldElement& c = p.coeff(k);
    if (c.is_zero()) continue;
    std::string mono = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
    int s = field_sign(c);
    bool first = terms.empty();
    terms.push_back({s, field_coeff_mono(first || s > 0 ? c : -c, mono)});
  }
  return join_terms(terms);
}

std::string print_poly(const MultiPoly& p, std::size_t d) {
  std::vector<std::size_t> sig;
  sig.push_back(d);  // t most significant
  for (std::size_t k = 0; k < d; ++k) sig.push_back(k);
  return multipoly_expr(p, sig, [d](std::size_t v) {
    return v == d ? std::string("t") : "x" + std::to_string(v + 1);
  });
}

std::string print_poly_generic(const MultiPoly& p, std::size_t d) {
  std::vector<std::size_t> sig;
  sig.push_back(d + 1);  // t
  sig.push_back(d);      // pi
  for (std::size_t k = 0; k < d; ++k) sig.push_back(k);
  return multipoly_expr(p, sig, [d](std::size_t v) {
    if (v == d + 1) return std::string("t");
    if (v == d) return std::string("pi");
    return "v" + std::to_string(v + 1);
  });
}

std::string print_matrix(const MultiPolyMatrix& M) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < M.rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < M.cols; ++j) row.push_back(print_poly(M.at(i, j), M.d));
    rows.push_back(std::move(row));
  }
  return rows.dump();
}

std::string print_unipoly_matrix(const UniPolyMatrix& M) {
  std::string out = "[";
  for (std::size_t i = 0; i < M.rows; ++i) {
    out += i == 0 ? "[" : " [";
    for (std::size_t j = 0; j < M.cols; ++j) {
      if (j) out += ", ";
      out += print_unipoly(M.at(i, j));
    }
    out += "]";
    if (i + 1 < M.rows) out += ",\n";
  }
  out += "]";
  return out;
}

}  // namespace perioctrl
