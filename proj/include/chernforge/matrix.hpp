#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "chernforge/rational.hpp"

namespace chernforge {

/// Dense matrix of exact rationals, row-major.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<Rational> apply(const std::vector<Rational>& x) const;
  Matrix operator*(const Matrix& o) const;

  /// Exact determinant by fraction-free (Bareiss) elimination.
  Rational determinant() const;

  Matrix inverse() const;  // throws SingularMatrix

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> data_;
};

/// Solves A x = b exactly for square invertible A; throws SingularMatrix when
/// det(A) = 0. Fraction-free elimination keeps intermediate growth bounded.
std::vector<Rational> solve_linear(const Matrix& a, const std::vector<Rational>& b);

/// Solves A x = b for a general (possibly rectangular or rank-deficient) A.
/// Returns a particular solution with free variables set to 0, or nullopt
/// when the system is inconsistent.
std::optional<std::vector<Rational>> solve_consistent(const Matrix& a,
                                                      const std::vector<Rational>& b);

/// (r+1)x(r+1) matrix with entry m^i at row m, column i (0^0 = 1).
Matrix vandermonde_matrix(int r);

/// Coefficients l_m(target) of Lagrange extrapolation through the given nodes:
/// p(target) = sum_m l_m(target) p(node_m) for any polynomial of degree < #nodes.
std::vector<Rational> lagrange_extrapolate_coeffs(const std::vector<long>& nodes, long target);

}  // namespace chernforge
