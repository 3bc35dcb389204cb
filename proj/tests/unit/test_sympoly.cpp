#include <doctest.h>

#include <numeric>

#include "chernforge/errors.hpp"
#include "chernforge/sympoly.hpp"

using namespace chernforge;

TEST_CASE("root expansion of twisted Chern classes") {
  const OracleEnv env = OracleEnv::build({{"E", 2}}, {"L"});
  const SymPoly a1 = SymPoly::variable(env.vars(), 0);
  const SymPoly a2 = SymPoly::variable(env.vars(), 1);
  const SymPoly l = SymPoly::variable(env.vars(), 2);

  // c_2(E (x) L) = (a1 + l)(a2 + l)
  CHECK(env.chern_of("E", {{"L", 1}}, 2) == (a1 + l) * (a2 + l));
  // c_1(L^m) = m l
  CHECK(env.chern_of("L", {}, 1).scale(Rational(3)) == l.scale(Rational(3)));
  const OracleEnv env2 = OracleEnv::build({{"E", 2}}, {"L"});
  CHECK(env2.chern_of("L", {{"L", 2}}, 1) == l.scale(Rational(3)));  // L (x) L^2 = L^3
  // c_0 of anything is 1
  CHECK(env.chern_of("E", {{"L", 5}}, 0) == SymPoly::constant(env.vars(), Rational(1)));
  // c_k vanishes above the rank
  CHECK(env.chern_of("E", {}, 3).is_zero());
  CHECK_THROWS_AS(env.chern_of("X", {}, 1), UnknownSymbol);
}

TEST_CASE("to_elementary on the classic power sum") {
  auto vars = std::make_shared<const VarSet>(std::vector<std::string>{"a1", "a2"});
  const SymPoly a1 = SymPoly::variable(vars, 0);
  const SymPoly a2 = SymPoly::variable(vars, 1);
  const ElementaryForm form = to_elementary(a1.pow(2) + a2.pow(2), {0, 1});
  // e1^2 - 2 e2
  const SymPoly e1 = SymPoly::variable(form.poly.vars(), 0);
  const SymPoly e2 = SymPoly::variable(form.poly.vars(), 1);
  CHECK(form.poly == e1.pow(2) - e2.scale(Rational(2)));
}

TEST_CASE("to_elementary of e1 itself and the NotSymmetric error") {
  auto vars = std::make_shared<const VarSet>(std::vector<std::string>{"a1", "a2", "a3"});
  const SymPoly sum = SymPoly::variable(vars, 0) + SymPoly::variable(vars, 1) +
                      SymPoly::variable(vars, 2);
  const ElementaryForm form = to_elementary(sum, {0, 1, 2});
  CHECK(form.poly == SymPoly::variable(form.poly.vars(), 0));

  const SymPoly skew = SymPoly::variable(vars, 0) - SymPoly::variable(vars, 1);
  CHECK_THROWS_AS(to_elementary(skew, {0, 1, 2}), NotSymmetric);
}

TEST_CASE("round trip: c_k(E) -> roots -> elementary is e_k, then back") {
  for (int r = 1; r <= 5; ++r) {
    const OracleEnv env = OracleEnv::build({{"E", r}}, {"L"});
    const auto roots = env.roots_of("E");
    for (int k = 1; k <= r; ++k) {
      const SymPoly expanded = env.chern_of("E", {}, k);
      const ElementaryForm form = to_elementary(expanded, roots);
      // exactly the variable e_k
      CHECK(form.poly == SymPoly::variable(form.poly.vars(), static_cast<std::size_t>(k) - 1));

      // Involution: substituting e_i = e_i(a) back reproduces the input.
      std::vector<SymPoly> values;
      for (int i = 1; i <= r; ++i)
        values.push_back(
            elementary_shifted(env.vars(), roots, i, SymPoly::zero(env.vars())));
      values.push_back(SymPoly::variable(env.vars(), env.find_line("L")->var));
      const SymPoly back = evaluate_sympoly(form.poly, values, SymPoly::zero(env.vars()),
                                            SymPoly::constant(env.vars(), Rational(1)));
      CHECK(back == expanded);
    }
  }
}

TEST_CASE("elementary polynomials stay symmetric with a shift") {
  const OracleEnv env = OracleEnv::build({{"E", 4}}, {"L"});
  const auto roots = env.roots_of("E");
  const SymPoly shifted = env.chern_of("E", {{"L", -2}}, 3);
  CHECK(shifted.symmetric_in(roots));
  // The involution also survives an l-dependent expansion.
  const ElementaryForm form = to_elementary(shifted, roots);
  std::vector<SymPoly> values;
  for (int i = 1; i <= 4; ++i)
    values.push_back(elementary_shifted(env.vars(), roots, i, SymPoly::zero(env.vars())));
  values.push_back(SymPoly::variable(env.vars(), env.find_line("L")->var));
  CHECK(evaluate_sympoly(form.poly, values, SymPoly::zero(env.vars()),
                         SymPoly::constant(env.vars(), Rational(1))) == shifted);
}

TEST_CASE("oracle_check reports the discrepancy") {
  const int r = 3;
  const OracleEnv env = OracleEnv::build({{"E", r}}, {"L"});
  // c_r(E (x) L) = sum_i c1(L)^i c_{r-i}(E)
  SymPoly rhs = SymPoly::zero(env.vars());
  for (int i = 0; i <= r; ++i)
    rhs = rhs + env.line_c1("L").pow(i) * env.chern_of("E", {}, r - i);
  const OracleOutcome good = oracle_check(env.chern_of("E", {{"L", 1}}, r), rhs);
  CHECK(good.equal);

  // c_1(E (x) L) != c_1(E): the difference is r*l.
  const OracleOutcome bad =
      oracle_check(env.chern_of("E", {{"L", 1}}, 1), env.chern_of("E", {}, 1));
  CHECK(!bad.equal);
  CHECK(bad.report.find("3*l_L") != std::string::npos);

  const SymPoly same = env.chern_of("E", {}, 2);
  CHECK(oracle_check(same, same).equal);
}

TEST_CASE("displayed twist regrouping holds for r <= 4") {
  for (int r = 1; r <= 4; ++r) {
    const OracleEnv env = OracleEnv::build({{"E", r}}, {"L"});
    for (int m = 0; m <= r; ++m) {
      const SymPoly lhs = env.chern_of("E", {{"L", m + 1}}, r);
      SymPoly rhs = SymPoly::zero(env.vars());
      for (int i = 0; i <= r; ++i)
        rhs = rhs + env.line_c1("L").pow(i).scale(Rational(m).pow(i)) *
                        env.chern_of("E", {{"L", 1}}, r - i);
      CHECK(oracle_check(lhs, rhs).equal);
    }
  }
}
