#include "perioctrl/polymatrix.hpp"

#include <stdexcept>

namespace perioctrl {

UniPolyMatrix UniPolyMatrix::identity(std::size_t n) {
  UniPolyMatrix r(n, n);
  for (std::size_t k = 0; k < n; ++k) r.at(k, k) = UniPoly::one();
  return r;
}

bool UniPolyMatrix::is_zero() const {
  for (const auto& e : entries)
    if (!e.is_zero()) return false;
  return true;
}

UniPolyMatrix matmul(const UniPolyMatrix& a, const UniPolyMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matmul: inner dimensions disagree");
  UniPolyMatrix r(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const UniPoly& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols; ++j) {
        const UniPoly& bkj = b.at(k, j);
        if (bkj.is_zero()) continue;
        r.at(i, j) += aik * bkj;
      }
    }
  return r;
}

FrequencyLattice::FrequencyLattice(std::vector<std::vector<Rational>> A)
    : d_(A.size()), A_(std::move(A)) {
  if (d_ == 0) throw std::invalid_argument("FrequencyLattice: empty period matrix");
  for (const auto& row : A_)
    if (row.size() != d_) throw std::invalid_argument("FrequencyLattice: period matrix not square");

  // Gauss-Jordan on [A | I] over the rationals; a vanishing pivot column
  // means the periods are linearly dependent.
  auto work = A_;
  A_inv_.assign(d_, std::vector<Rational>(d_, Rational(0)));
  for (std::size_t k = 0; k < d_; ++k) A_inv_[k][k] = Rational(1);
  for (std::size_t col = 0; col < d_; ++col) {
    std::size_t piv = col;
    while (piv < d_ && work[piv][col].is_zero()) ++piv;
    if (piv == d_) throw std::invalid_argument("FrequencyLattice: period matrix is singular");
    std::swap(work[piv], work[col]);
    std::swap(A_inv_[piv], A_inv_[col]);
    Rational inv = work[col][col].inv();
    for (std::size_t j = 0; j < d_; ++j) {
      work[col][j] = work[col][j] * inv;
      A_inv_[col][j] = A_inv_[col][j] * inv;
    }
    for (std::size_t i = 0; i < d_; ++i) {
      if (i == col || work[i][col].is_zero()) continue;
      Rational f = work[i][col];
      for (std::size_t j = 0; j < d_; ++j) {
        work[i][j] = work[i][j] - f * work[col][j];
        A_inv_[i][j] = A_inv_[i][j] - f * A_inv_[col][j];
      }
    }
  }
}

Frequency frequency_from_mode(const FrequencyLattice& L, const std::vector<long>& n) {
  if (n.size() != L.d()) throw std::invalid_argument("frequency_from_mode: mode length mismatch");
  Frequency f;
  f.n = n;
  f.v.assign(L.d(), Rational(0));
  for (std::size_t i = 0; i < L.d(); ++i)
    for (std::size_t j = 0; j < L.d(); ++j)
      f.v[i] = f.v[i] + L.A_inv()[i][j] * Rational(n[j]);
  return f;
}

std::vector<std::vector<long>> modes_in_box(std::size_t d, long B) {
  if (B < 0) throw std::invalid_argument("modes_in_box: negative radius");
  std::vector<std::vector<long>> out;
  std::vector<long> cur(d, -B);
  while (true) {
    out.push_back(cur);
    std::size_t k = d;
    while (k > 0) {
      --k;
      if (cur[k] < B) {
        ++cur[k];
        for (std::size_t j = k + 1; j < d; ++j) cur[j] = -B;
        break;
      }
      if (k == 0) return out;
    }
    if (d == 0) return out;
  }
}

UniPolyMatrix substitute_frequency(const MultiPolyMatrix& M, const Frequency& f) {
  if (f.v.size() != M.d) throw std::invalid_argument("substitute_frequency: dimension mismatch");
  // Precompute (2*i*pi*v_k)^e for each spatial variable up to its max degree.
  std::vector<std::vector<FieldElement>> powers(M.d);
  for (std::size_t k = 0; k < M.d; ++k) {
    int maxdeg = 0;
    for (const auto& p : M.entries) maxdeg = std::max(maxdeg, p.degree_in(k));
    powers[k].reserve(static_cast<std::size_t>(maxdeg) + 1);
    powers[k].push_back(FieldElement(1));
    FieldElement base = field_two_i_pi(f.v[k]);
    for (int e = 1; e <= maxdeg; ++e) powers[k].push_back(powers[k].back() * base);
  }

  UniPolyMatrix out(M.rows, M.cols);
  for (std::size_t idx = 0; idx < M.entries.size(); ++idx) {
    const MultiPoly& p = M.entries[idx];
    int dt = p.degree_in(M.d);
    std::vector<FieldElement> coeffs(dt >= 0 ? static_cast<std::size_t>(dt) + 1 : 0);
    for (const auto& [e, c] : p.terms()) {
      FieldElement term = field_from(c);
      for (std::size_t k = 0; k < M.d; ++k)
        if (e[k] > 0) term *= powers[k][e[k]];
      coeffs[e[M.d]] += term;
    }
    out.entries[idx] = UniPoly(std::move(coeffs));
  }
  return out;
}

std::vector<std::vector<std::complex<double>>> numeric_eval(const MultiPolyMatrix& M,
                                                            const Frequency& f,
                                                            std::complex<double> t,
                                                            double pi_approx) {
  std::vector<std::complex<double>> point(M.d + 1);
  for (std::size_t k = 0; k < M.d; ++k)
    point[k] = std::complex<double>(0.0, 2.0 * pi_approx * f.v[k].to_double());
  point[M.d] = t;
  std::vector<std::vector<std::complex<double>>> out(M.rows,
                                                     std::vector<std::complex<double>>(M.cols));
  for (std::size_t i = 0; i < M.rows; ++i)
    for (std::size_t j = 0; j < M.cols; ++j) {
      std::complex<double> z = M.at(i, j).eval(point);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::runtime_error("numeric_eval: overflow in entry evaluation");
      out[i][j] = z;
    }
  return out;
}

}  // namespace perioctrl
