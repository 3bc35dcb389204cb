#include <doctest.h>

#include <random>

#include "chernforge/matrix.hpp"

using namespace chernforge;

namespace {

Matrix from_rows(const std::vector<std::vector<long>>& rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = Rational(rows[i][j]);
  return m;
}

// Independent determinant oracle: cofactor expansion.
Rational det_cofactor(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);
  if (n == 1) return m.at(0, 0);
  Rational acc(0);
  for (std::size_t j = 0; j < n; ++j) {
    Matrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = m.at(r, c);
      }
    }
    const Rational term = m.at(0, j) * det_cofactor(minor);
    acc += j % 2 == 0 ? term : -term;
  }
  return acc;
}

}  // namespace

TEST_CASE("solve_linear on the identity and a forward-substitution system") {
  const Matrix id = Matrix::identity(2);
  const auto x = solve_linear(id, {Rational(3, 2), Rational(-5)});
  CHECK(x == std::vector<Rational>{Rational(3, 2), Rational(-5)});

  const Matrix tri = from_rows({{1, 0}, {1, 1}});
  const auto y = solve_linear(tri, {Rational(7, 3), Rational(2)});
  CHECK(y[0] == Rational(7, 3));
  CHECK(y[1] == Rational(2) - Rational(7, 3));
}

TEST_CASE("solve_linear against the hand-solved 3x3 Vandermonde system") {
  // x0 = p0, x1 = (4 p1 - p2 - 3 p0)/2, x2 = (p2 - 2 p1 + p0)/2
  const Matrix v = vandermonde_matrix(2);
  std::mt19937 rng(99);
  std::uniform_int_distribution<long> coeff(-9, 9);
  for (int trial = 0; trial < 25; ++trial) {
    const Rational p0(coeff(rng), 1 + trial % 3), p1(coeff(rng)), p2(coeff(rng));
    const auto x = solve_linear(v, {p0, p1, p2});
    CHECK(x[0] == p0);
    CHECK(x[1] == (Rational(4) * p1 - p2 - Rational(3) * p0) / Rational(2));
    CHECK(x[2] == (p2 - Rational(2) * p1 + p0) / Rational(2));
  }
}

TEST_CASE("solve_linear rejects singular matrices") {
  const Matrix sing = from_rows({{1, 2}, {2, 4}});
  CHECK_THROWS_AS(solve_linear(sing, {Rational(1), Rational(1)}), SingularMatrix);
  CHECK(sing.determinant() == Rational(0));
}

TEST_CASE("re-multiplication: A x = b exactly on random invertible matrices up to 8x8") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<long> entry(-6, 6);
  int solved = 0;
  while (solved < 60) {
    const std::size_t n = 1 + rng() % 8;
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a.at(i, j) = Rational(entry(rng));
    if (a.determinant().is_zero()) continue;
    std::vector<Rational> b(n);
    for (auto& v : b) v = Rational(entry(rng), 1 + rng() % 4);
    const auto x = solve_linear(a, b);
    CHECK(a.apply(x) == b);
    ++solved;
  }
}

TEST_CASE("determinant agrees with the cofactor oracle") {
  std::mt19937 rng(555);
  std::uniform_int_distribution<long> entry(-5, 5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a.at(i, j) = Rational(entry(rng), 1 + rng() % 3);
    CHECK(a.determinant() == det_cofactor(a));
  }
}

TEST_CASE("vandermonde_matrix matches m^i with 0^0 = 1") {
  CHECK(vandermonde_matrix(0) == from_rows({{1}}));
  CHECK(vandermonde_matrix(2) == from_rows({{1, 0, 0}, {1, 1, 1}, {1, 2, 4}}));
  CHECK(vandermonde_matrix(3) ==
        from_rows({{1, 0, 0, 0}, {1, 1, 1, 1}, {1, 2, 4, 8}, {1, 3, 9, 27}}));
  for (int r = 0; r <= 8; ++r) CHECK(!vandermonde_matrix(r).determinant().is_zero());
}

TEST_CASE("matrix inverse solves column by column") {
  const Matrix v = vandermonde_matrix(3);
  CHECK(v * v.inverse() == Matrix::identity(4));
}

TEST_CASE("lagrange extrapolation coefficients") {
  CHECK(lagrange_extrapolate_coeffs({0, 1, 2}, -1) ==
        std::vector<Rational>{Rational(3), Rational(-3), Rational(1)});
  CHECK(lagrange_extrapolate_coeffs({0, 1, 2, 3}, -1) ==
        std::vector<Rational>{Rational(4), Rational(-6), Rational(4), Rational(-1)});
  CHECK(lagrange_extrapolate_coeffs({0, 1}, 0) ==
        std::vector<Rational>{Rational(1), Rational(0)});
  CHECK_THROWS_AS(lagrange_extrapolate_coeffs({0, 1, 1}, 2), DuplicateNodes);

  // (-1)^m C(r+1, m+1) closed form for nodes 0..r extrapolated to -1.
  for (int r = 0; r <= 8; ++r) {
    std::vector<long> nodes(static_cast<std::size_t>(r) + 1);
    for (int m = 0; m <= r; ++m) nodes[static_cast<std::size_t>(m)] = m;
    const auto coeffs = lagrange_extrapolate_coeffs(nodes, -1);
    for (int m = 0; m <= r; ++m)
      CHECK(coeffs[static_cast<std::size_t>(m)] ==
            Rational(m % 2 == 0 ? 1 : -1) * Rational::binomial(r + 1, m + 1));
  }
}

TEST_CASE("solve_consistent finds particular solutions and detects inconsistency") {
  // x + y = 3 with a redundant doubled row: consistent, rank 1.
  Matrix a(2, 2);
  a.at(0, 0) = Rational(1);
  a.at(0, 1) = Rational(1);
  a.at(1, 0) = Rational(2);
  a.at(1, 1) = Rational(2);
  auto sol = solve_consistent(a, {Rational(3), Rational(6)});
  REQUIRE(sol.has_value());
  CHECK(a.apply(*sol) == std::vector<Rational>{Rational(3), Rational(6)});

  auto none = solve_consistent(a, {Rational(3), Rational(7)});
  CHECK(!none.has_value());
}
