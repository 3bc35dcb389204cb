#include "chernforge/matrix.hpp"

#include <gmpxx.h>

#include <cassert>
#include <set>

namespace chernforge {

namespace {

// Augmented integer matrix for fraction-free elimination. Rows of a rational
// system are scaled by the lcm of their denominators before entering here.
struct IntRows {
  std::size_t rows = 0, cols = 0;
  std::vector<mpz_class> a;

  mpz_class& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const mpz_class& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

IntRows integerize(const Matrix& m, const std::vector<Rational>* rhs) {
  IntRows out;
  out.rows = m.rows();
  out.cols = m.cols() + (rhs ? 1 : 0);
  out.a.resize(out.rows * out.cols);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).denominator().get_mpz_t());
    if (rhs)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), (*rhs)[i].denominator().get_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j)
      out.at(i, j) = m.at(i, j).numerator() * (l / m.at(i, j).denominator());
    if (rhs)
      out.at(i, m.cols()) = (*rhs)[i].numerator() * (l / (*rhs)[i].denominator());
  }
  return out;
}

mpz_class exact_div(const mpz_class& num, const mpz_class& den) {
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (r != 0) throw Error("internal: non-exact division in fraction-free elimination");
  return q;
}

// One-step Bareiss forward elimination on an augmented matrix, with column
// skipping for rank-deficient systems. Returns the pivot (row, col) list.
// `lead_cols` bounds the columns eligible as pivots (the coefficient part).
std::vector<std::pair<std::size_t, std::size_t>> bareiss_forward(IntRows& m,
                                                                 std::size_t lead_cols) {
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < lead_cols && r < m.rows; ++c) {
    std::size_t p = r;
    while (p < m.rows && m.at(p, c) == 0) ++p;
    if (p == m.rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    const mpz_class pivot = m.at(r, c);
    for (std::size_t i = r + 1; i < m.rows; ++i) {
      for (std::size_t j = c + 1; j < m.cols; ++j)
        m.at(i, j) = exact_div(m.at(i, j) * pivot - m.at(i, c) * m.at(r, j), prev);
      m.at(i, c) = 0;
    }
    prev = pivot;
    pivots.emplace_back(r, c);
    ++r;
  }
  return pivots;
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
  return m;
}

std::vector<Rational> Matrix::apply(const std::vector<Rational>& x) const {
  assert(x.size() == cols_);
  std::vector<Rational> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += at(i, j) * x[j];
  return y;
}

Matrix Matrix::operator*(const Matrix& o) const {
  assert(cols_ == o.rows_);
  Matrix m(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      for (std::size_t j = 0; j < o.cols_; ++j) m.at(i, j) += at(i, k) * o.at(k, j);
  return m;
}

Rational Matrix::determinant() const {
  if (rows_ != cols_) throw SingularMatrix("determinant of a non-square matrix");
  if (rows_ == 0) return Rational(1);

  IntRows m = integerize(*this, nullptr);
  Rational scale(1);
  for (std::size_t i = 0; i < rows_; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < cols_; ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), at(i, j).denominator().get_mpz_t());
    scale *= Rational(l);
  }

  int sign = 1;
  mpz_class prev = 1;
  const std::size_t n = rows_;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && m.at(p, k) == 0) ++p;
    if (p == n) return Rational(0);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(k, j));
      sign = -sign;
    }
    const mpz_class pivot = m.at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m.at(i, j) = exact_div(m.at(i, j) * pivot - m.at(i, k) * m.at(k, j), prev);
      m.at(i, k) = 0;
    }
    prev = pivot;
  }
  Rational det{Rational(m.at(n - 1, n - 1))};
  if (sign < 0) det = -det;
  return det / scale;
}

std::vector<Rational> solve_linear(const Matrix& a, const std::vector<Rational>& b) {
  if (a.rows() != a.cols()) throw SingularMatrix("solve_linear requires a square matrix");
  if (b.size() != a.rows()) throw SingularMatrix("right-hand side length mismatch");
  const std::size_t n = a.rows();
  if (n == 0) return {};

  IntRows m = integerize(a, &b);
  auto pivots = bareiss_forward(m, n);
  if (pivots.size() != n) throw SingularMatrix("matrix is singular");

  std::vector<Rational> x(n);
  for (std::size_t ri = n; ri-- > 0;) {
    const std::size_t c = pivots[ri].second;
    Rational acc{Rational(m.at(ri, n))};
    for (std::size_t j = c + 1; j < n; ++j) acc -= Rational(m.at(ri, j)) * x[j];
    x[c] = acc / Rational(m.at(ri, c));
  }
  return x;
}

std::optional<std::vector<Rational>> solve_consistent(const Matrix& a,
                                                      const std::vector<Rational>& b) {
  assert(b.size() == a.rows());
  const std::size_t n = a.cols();
  IntRows m = integerize(a, &b);
  auto pivots = bareiss_forward(m, n);

  const std::size_t rank = pivots.size();
  for (std::size_t i = rank; i < m.rows; ++i)
    if (m.at(i, n) != 0) return std::nullopt;

  std::vector<Rational> x(n);
  for (std::size_t ri = rank; ri-- > 0;) {
    const std::size_t c = pivots[ri].second;
    Rational acc{Rational(m.at(ri, n))};
    for (std::size_t j = c + 1; j < n; ++j)
      if (!x[j].is_zero()) acc -= Rational(m.at(ri, j)) * x[j];
    x[c] = acc / Rational(m.at(ri, c));
  }
  return x;
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw SingularMatrix("inverse of a non-square matrix");
  const std::size_t n = rows_;
  Matrix inv(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<Rational> e(n);
    e[col] = Rational(1);
    auto x = solve_linear(*this, e);
    for (std::size_t i = 0; i < n; ++i) inv.at(i, col) = x[i];
  }
  return inv;
}

Matrix vandermonde_matrix(int r) {
  assert(r >= 0);
  const std::size_t n = static_cast<std::size_t>(r) + 1;
  Matrix m(n, n);
  for (std::size_t row = 0; row < n; ++row) {
    Rational p(1);  // m^0 = 1, including 0^0
    for (std::size_t col = 0; col < n; ++col) {
      m.at(row, col) = p;
      p *= Rational(static_cast<long>(row));
    }
  }
  return m;
}

std::vector<Rational> lagrange_extrapolate_coeffs(const std::vector<long>& nodes, long target) {
  std::set<long> seen(nodes.begin(), nodes.end());
  if (seen.size() != nodes.size()) throw DuplicateNodes("lagrange nodes must be distinct");

  std::vector<Rational> coeffs(nodes.size());
  for (std::size_t m = 0; m < nodes.size(); ++m) {
    Rational c(1);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (j == m) continue;
      c *= Rational(target - nodes[j], nodes[m] - nodes[j]);
    }
    coeffs[m] = c;
  }
  return coeffs;
}

}  // namespace chernforge
