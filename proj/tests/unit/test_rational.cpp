#include <doctest.h>

#include <random>

#include "chernforge/rational.hpp"

using chernforge::Rational;

TEST_CASE("rationals normalize eagerly to lowest terms with positive denominator") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(-6, 4).numerator() == -3);
  CHECK(Rational(6, -4).numerator() == -3);
  CHECK(Rational(6, -4).denominator() == 2);
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(0, 7).denominator() == 1);
  CHECK_THROWS_AS(Rational(1, 0), chernforge::ZeroDenominator);
}

TEST_CASE("string form is num/den with the denominator omitted when 1") {
  CHECK(Rational(3, 2).str() == "3/2");
  CHECK(Rational(-5).str() == "-5");
  CHECK(Rational(4, 2).str() == "2");
  CHECK(Rational::parse("3/2") == Rational(3, 2));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational::parse("-7/14") == Rational(-1, 2));
  CHECK_THROWS_AS(Rational::parse("a/b"), chernforge::Error);
  CHECK_THROWS_AS(Rational::parse("1.5"), chernforge::Error);
}

TEST_CASE("arithmetic and power") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
  CHECK_THROWS_AS(Rational(1) / Rational(0), chernforge::ZeroDenominator);
  CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  CHECK(Rational(7).pow(0) == Rational(1));
  CHECK(Rational::factorial(5) == Rational(120));
  CHECK(Rational::binomial(5, 2) == Rational(10));
  CHECK(Rational::binomial(3, 5) == Rational(0));
}

TEST_CASE("field laws hold exactly on randomized triples") {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 30);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
  }
}
