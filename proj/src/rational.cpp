#include "chernforge/rational.hpp"

#include <cctype>
#include <ostream>

namespace chernforge {

Rational::Rational(long num, long den) {
  if (den == 0) throw ZeroDenominator("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (sgn(den) == 0) throw ZeroDenominator("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string num{text}, den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = std::string(text.substr(0, slash));
    den = std::string(text.substr(slash + 1));
  }
  if (!is_int(num) || !is_int(den))
    throw Error("malformed rational literal: \"" + std::string(text) + "\"");
  return Rational(mpz_class(num), mpz_class(den));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw ZeroDenominator("division by zero");
  return Rational(mpq_class(a.v_ / b.v_));
}

Rational Rational::pow(long e) const {
  if (e == 0) return Rational(1);
  Rational base = *this;
  if (e < 0) {
    if (is_zero()) throw ZeroDenominator("0 raised to a negative power");
    base = Rational(1) / *this;
    e = -e;
  }
  Rational acc(1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

std::string Rational::str() const {
  std::string s = v_.get_num().get_str();
  if (v_.get_den() != 1) s += "/" + v_.get_den().get_str();
  return s;
}

Rational Rational::factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

Rational Rational::binomial(long n, long k) {
  if (k < 0 || k > n) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(b);
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

}  // namespace chernforge
