#include "chernforge/selftest.hpp"

#include <random>
#include <sstream>

#include "chernforge/certificate.hpp"
#include "chernforge/matrix.hpp"
#include "chernforge/reduction.hpp"

namespace chernforge {

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (!ok) detail << "; ";
    ok = false;
    detail << what;
  }
  SuiteResult result(const std::string& name) const {
    return {name, ok, ok ? "all exact checks passed" : detail.str()};
  }
};

struct UniversalEL {
  ModelPtr model;
  FormalBundle e;
  LineBundleSymbol l;
};

UniversalEL make_universal_el(int r, int truncation) {
  std::vector<Generator> gens;
  for (int k = 1; k <= r; ++k) gens.push_back({"c" + std::to_string(k) + "_E", k});
  gens.push_back({"c1_L", 1});
  auto model = RingModel::universal(truncation, gens);
  std::vector<CycleClass> chern;
  for (int k = 1; k <= r; ++k)
    chern.push_back(CycleClass::generator(model, static_cast<std::size_t>(k) - 1));
  FormalBundle e = FormalBundle::make("E", r, std::move(chern), false, true);
  LineBundleSymbol l = LineBundleSymbol::make(
      "L", CycleClass::generator(model, static_cast<std::size_t>(r)), true);
  return {model, std::move(e), std::move(l)};
}

SuiteResult suite_vandermonde() {
  Check c;
  const Matrix v2 = vandermonde_matrix(2);
  const long expected[3][3] = {{1, 0, 0}, {1, 1, 1}, {1, 2, 4}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      c.expect(v2.at(i, j) == Rational(expected[i][j]),
               "vandermonde_matrix(2) entry mismatch at " + std::to_string(i) + "," +
                   std::to_string(j));
  for (int r = 0; r <= 8; ++r)
    c.expect(!vandermonde_matrix(r).determinant().is_zero(),
             "vandermonde determinant vanished at r=" + std::to_string(r));
  return c.result("1 Vandermonde fidelity");
}

SuiteResult suite_xi_certificates() {
  Check c;
  for (int r = 1; r <= 4; ++r) {
    const auto ctx = make_universal_el(r, r);
    for (int i = 0; i <= r; ++i) {
      const Certificate cert = certify_xi(r, i);
      const CertificateCheck check = verify_certificate(cert, ctx.e, ctx.l);
      c.expect(check.ok, "certify_xi(" + std::to_string(r) + "," + std::to_string(i) +
                             ") failed in " + ctx.model->id());
      c.expect(oracle_check_certificate(cert).equal,
               "oracle rejects certify_xi(" + std::to_string(r) + "," + std::to_string(i) +
                   ")");
    }
    const Certificate x0 = certify_xi(r, 0);
    c.expect(x0.atoms.size() == 1 && x0.atoms[0].second.k == 1 &&
                 x0.atoms[0].first == Rational(1),
             "certify_xi(r,0) is not the single atom (1, k=1) at r=" + std::to_string(r));
    // x_r expands to c1(L)^r.
    const Certificate xr = certify_xi(r, r);
    CycleClass combo = CycleClass::zero(ctx.model);
    for (const auto& [coeff, atom] : xr.atoms)
      combo = combo + tensor_line(ctx.e, line_power(ctx.l, atom.k))
                          .chern_class(r)
                          .scale(coeff);
    c.expect(combo == ctx.l.c1.pow(r),
             "certify_xi(r,r) does not expand to c1(L)^r at r=" + std::to_string(r));
    c.expect(oracle_check_certificate(xr).equal,
             "oracle rejects certify_xi(r,r) at r=" + std::to_string(r));
  }
  return c.result("2 x_i certificates");
}

SuiteResult suite_top_certificates() {
  Check c;
  for (int r = 1; r <= 6; ++r) {
    // certify_top internally insists the Vandermonde and Lagrange paths
    // agree; recompute the closed form here on top of that.
    const Certificate cert = certify_top(r);
    c.expect(static_cast<int>(cert.atoms.size()) == r + 1,
             "certify_top atom count wrong at r=" + std::to_string(r));
    for (int m = 0; m <= r; ++m) {
      const Rational expected =
          Rational(m % 2 == 0 ? 1 : -1) * Rational::binomial(r + 1, m + 1);
      c.expect(cert.atoms[static_cast<std::size_t>(m)].first == expected,
               "certify_top coefficient differs from (-1)^m C(r+1,m+1) at r=" +
                   std::to_string(r) + ", m=" + std::to_string(m));
      c.expect(cert.atoms[static_cast<std::size_t>(m)].second.k == m + 1,
               "certify_top atom twist wrong at r=" + std::to_string(r));
    }
  }
  for (int r = 1; r <= 4; ++r) {
    c.expect(oracle_check_certificate(certify_top(r)).equal,
             "splitting oracle rejects certify_top(" + std::to_string(r) + ")");
    const auto ctx = make_universal_el(r, r);
    c.expect(verify_certificate(certify_top(r), ctx.e, ctx.l).ok,
             "certify_top(" + std::to_string(r) + ") failed in the universal ring");
  }
  // Rank-1 anchor: c_1(E) = 2 c_1(E(x)L) - c_1(E(x)L^2).
  const Certificate rank1 = certify_top(1);
  c.expect(rank1.atoms.size() == 2 && rank1.atoms[0].first == Rational(2) &&
               rank1.atoms[0].second.k == 1 && rank1.atoms[1].first == Rational(-1) &&
               rank1.atoms[1].second.k == 2,
           "rank-1 anchor coefficients are not (2, -1)");
  return c.result("3 top-Chern certificates");
}

SuiteResult suite_twist_oracle() {
  Check c;
  for (int r = 1; r <= 4; ++r) {
    const auto ctx = make_universal_el(r, r);
    const OracleEnv env = OracleEnv::build({{"E", r}}, {"L"});
    const auto roots = env.roots_of("E");
    for (int m = -1; m <= r; ++m) {
      const FormalBundle twisted = tensor_line(ctx.e, line_power(ctx.l, m));
      for (int k = 1; k <= r; ++k) {
        // Independent route: expand e_k(a_i + m l) in roots and rewrite in
        // elementary symmetric polynomials, then substitute the generic
        // Chern classes back in.
        const SymPoly expanded = env.chern_of("E", {{"L", m}}, k);
        const ElementaryForm elem = to_elementary(expanded, roots);
        std::vector<CycleClass> values;
        for (int j = 1; j <= r; ++j) values.push_back(ctx.e.chern_class(j));
        values.push_back(ctx.l.c1);  // the passthrough variable l_L
        const CycleClass from_oracle =
            evaluate_sympoly(elem.poly, values, CycleClass::zero(ctx.model),
                             CycleClass::one(ctx.model));
        c.expect(from_oracle == twisted.chern_class(k),
                 "tensor_line disagrees with the root expansion at r=" + std::to_string(r) +
                     ", k=" + std::to_string(k) + ", m=" + std::to_string(m));
      }
    }
    // Regrouping: c_r((E(x)L)(x)L^m) = sum_i m^i c1(L)^i c_{r-i}(E(x)L).
    for (int m = 0; m <= r; ++m) {
      const SymPoly lhs = env.chern_of("E", {{"L", m + 1}}, r);
      SymPoly rhs = SymPoly::zero(env.vars());
      for (int i = 0; i <= r; ++i)
        rhs = rhs + env.line_c1("L").pow(i).scale(Rational(m).pow(i)) *
                        env.chern_of("E", {{"L", 1}}, r - i);
      c.expect(oracle_check(lhs, rhs).equal,
               "regrouped twist identity fails at r=" + std::to_string(r) +
                   ", m=" + std::to_string(m));
      const FormalBundle regrouped =
          tensor_line(tensor_line(ctx.e, ctx.l), line_power(ctx.l, m));
      const FormalBundle direct = tensor_line(ctx.e, line_power(ctx.l, m + 1));
      for (int k = 1; k <= r; ++k)
        c.expect(regrouped.chern_class(k) == direct.chern_class(k),
                 "tensor_line regrouping fails at r=" + std::to_string(r) +
                     ", m=" + std::to_string(m));
    }
  }
  return c.result("4 twist-formula oracle equivalence");
}

SuiteResult suite_chern_character() {
  Check c;
  const int d = 6;
  // Generic bundles of ranks up to 3: the identities become polynomial
  // identities in the universal ring, which covers every specialization.
  for (int re = 1; re <= 3; ++re)
    for (int rf = 1; rf <= 3; ++rf) {
      std::vector<Generator> gens;
      for (int k = 1; k <= re; ++k) gens.push_back({"c" + std::to_string(k) + "_E", k});
      for (int k = 1; k <= rf; ++k) gens.push_back({"c" + std::to_string(k) + "_F", k});
      gens.push_back({"c1_L", 1});
      auto model = RingModel::universal(d, gens);
      auto gen = [&](std::size_t i) { return CycleClass::generator(model, i); };
      std::vector<CycleClass> ce, cf;
      for (int k = 0; k < re; ++k) ce.push_back(gen(static_cast<std::size_t>(k)));
      for (int k = 0; k < rf; ++k) cf.push_back(gen(static_cast<std::size_t>(re + k)));
      const FormalBundle e = FormalBundle::make("E", re, ce);
      const FormalBundle f = FormalBundle::make("F", rf, cf);
      const LineBundleSymbol l =
          LineBundleSymbol::make("L", gen(static_cast<std::size_t>(re + rf)), true);
      const FormalBundle lb = FormalBundle::make("Lb", 1, {l.c1});

      c.expect(chern_character(direct_sum(e, f), d) ==
                   chern_character(e, d) + chern_character(f, d),
               "ch(E+F) != ch(E)+ch(F) at ranks " + std::to_string(re) + "," +
                   std::to_string(rf));
      c.expect(chern_character(tensor_line(e, l), d) ==
                   chern_character(e, d) * chern_character(lb, d),
               "ch(E(x)L) != ch(E)ch(L) at rank " + std::to_string(re));
      c.expect(chern_character(e, d).degree_component(0) ==
                   CycleClass::constant(model, Rational(re)),
               "degree-0 part of ch is not the rank");
    }

  // Randomized concrete instances in P^6, exact equality throughout.
  std::mt19937 rng(20260809);
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<long> den(1, 3);
  auto pn = RingModel::projective(6);
  const CycleClass h = CycleClass::generator(pn, 0);
  for (int trial = 0; trial < 10; ++trial) {
    auto rand_chern = [&](int rank) {
      std::vector<CycleClass> cs;
      for (int k = 1; k <= rank; ++k)
        cs.push_back(h.pow(k).scale(Rational(num(rng), den(rng))));
      return cs;
    };
    const int re = 1 + static_cast<int>(rng() % 3), rf = 1 + static_cast<int>(rng() % 3);
    const FormalBundle e = FormalBundle::make("E", re, rand_chern(re));
    const FormalBundle f = FormalBundle::make("F", rf, rand_chern(rf));
    const LineBundleSymbol l =
        LineBundleSymbol::make("L", h.scale(Rational(num(rng), den(rng))), true);
    const FormalBundle lb = FormalBundle::make("Lb", 1, {l.c1});
    c.expect(chern_character(direct_sum(e, f), d) ==
                 chern_character(e, d) + chern_character(f, d),
             "randomized ch additivity failed in P(6)");
    c.expect(chern_character(tensor_line(e, l), d) ==
                 chern_character(e, d) * chern_character(lb, d),
             "randomized ch multiplicativity failed in P(6)");
  }
  return c.result("5 Chern character");
}

SuiteResult suite_ring_models() {
  Check c;
  for (int n = 0; n <= 10; ++n) {
    auto pn = RingModel::projective(n);
    const CycleClass h = CycleClass::generator(pn, 0);
    c.expect(h.pow(n + 1).is_zero(), "H^{n+1} != 0 in P(" + std::to_string(n) + ")");
    c.expect(n == 0 || !h.pow(n).is_zero(), "H^n vanished in P(" + std::to_string(n) + ")");
  }
  for (int m = 0; m <= 10; ++m)
    for (int n = 0; m + n <= 10; ++n) {
      auto prod = RingModel::product_of_projectives({m, n});
      const CycleClass h1 = CycleClass::generator(prod, 0);
      const CycleClass h2 = CycleClass::generator(prod, 1);
      const CycleClass top = (h1 + h2).pow(m + n);
      c.expect(top.coefficient({m, n}) == Rational::binomial(m + n, m),
               "binomial coefficient mismatch in PxP(" + std::to_string(m) + "," +
                   std::to_string(n) + ")");
    }

  auto g24 = RingModel::grassmannian(2, 4);
  const CycleClass s1 = CycleClass::schubert(g24, {1});
  c.expect(s1 * s1 == CycleClass::schubert(g24, {2}) + CycleClass::schubert(g24, {1, 1}),
           "sigma_1^2 != sigma_2 + sigma_{1,1} in G(2,4)");
  c.expect(s1.pow(4) == CycleClass::schubert(g24, {2, 2}).scale(Rational(2)),
           "sigma_1^4 != 2 sigma_{2,2} in G(2,4)");

  // All structure constants are nonnegative integers, and Giambelli is the
  // identity on basis classes.
  for (auto model : {RingModel::grassmannian(2, 4), RingModel::grassmannian(2, 5)}) {
    const int k = model->grass_k(), w = model->grass_n() - model->grass_k();
    std::vector<std::vector<int>> box;
    for (int a = 0; a <= w; ++a)
      for (int b = 0; b <= a; ++b) {
        std::vector<int> lambda;
        if (a > 0) lambda.push_back(a);
        if (b > 0) lambda.push_back(b);
        if (static_cast<int>(lambda.size()) <= k) box.push_back(lambda);
      }
    for (const auto& la : box) {
      c.expect(giambelli_expand(model, la) == CycleClass::schubert(model, la),
               "giambelli_expand is not the identity in " + model->id());
      for (const auto& mu : box) {
        const CycleClass prod =
            CycleClass::schubert(model, la) * CycleClass::schubert(model, mu);
        for (const auto& [part, coeff] : prod.terms())
          c.expect(coeff.is_integer() && coeff.sign() >= 0,
                   "negative or fractional structure constant in " + model->id());
      }
    }
  }
  return c.result("6 ring models");
}

SuiteResult suite_reduction() {
  Check c;
  for (long d = 0; d <= 12; ++d) {
    bool prev = true;
    for (long i = 0; i <= d + 2; ++i) {
      const bool verdict = kleiman_smooth_bound(d, i);
      const bool reference = Rational(i) < Rational(d + 2, 2);
      c.expect(verdict == reference, "kleiman bound mismatch at d=" + std::to_string(d) +
                                         ", i=" + std::to_string(i));
      c.expect(prev || !verdict, "kleiman bound is not monotone at d=" + std::to_string(d));
      prev = verdict;
    }
    const long threshold = (d + 2 + 1) / 2 - 1;  // ceil((d+2)/2) - 1
    c.expect(kleiman_smooth_bound(d, threshold) && !kleiman_smooth_bound(d, threshold + 1),
             "kleiman boundary off at d=" + std::to_string(d));
  }

  // Syzygy identities: a constructed true instance and its perturbations.
  auto p4 = RingModel::projective(4);
  const CycleClass h = CycleClass::generator(p4, 0);
  const FormalBundle e = FormalBundle::make(
      "E", 2, {CycleClass::zero(p4), h.pow(2).scale(Rational(3))});
  SyzygyInstance good{h.pow(2), 2, e, 2, 1, h};
  c.expect(verify_syzygy_identity(good).ok, "true syzygy instance rejected");
  for (long delta : {-1L, 1L}) {
    SyzygyInstance bad = good;
    bad.n += delta;
    const SyzygyCheck check = verify_syzygy_identity(bad);
    c.expect(!check.ok && !check.residual.is_zero(),
             "unit perturbation of n must fail with a nonzero residual");
  }
  auto p3 = RingModel::projective(3);
  const CycleClass h3 = CycleClass::generator(p3, 0);
  SyzygyInstance first{h3, 1, FormalBundle::make("O1", 1, {h3}), 0, 1, h3};
  c.expect(verify_syzygy_identity(first).ok, "codimension-1 syzygy instance rejected");

  // Subalgebra membership with the mandatory re-evaluation built in.
  {
    auto model = RingModel::projective(3);
    const CycleClass hh = CycleClass::generator(model, 0);
    const auto res = express_in_subalgebra(hh.pow(2), {{"H", hh, "hyperplane"}}, 3);
    c.expect(res.representable && res.combination.size() == 1 &&
                 res.combination[0].exponents == std::vector<int>{2} &&
                 res.combination[0].coeff == Rational(1),
             "H^2 should be H*H in P(3)");
    for (int j = 0; j <= 3; ++j)
      c.expect(express_in_subalgebra(hh.pow(j), {{"H", hh, "hyperplane"}}, 3).representable,
               "P(n) completeness failed at degree " + std::to_string(j));
  }
  {
    auto g24 = RingModel::grassmannian(2, 4);
    const auto res = express_in_subalgebra(
        CycleClass::schubert(g24, {1, 1}),
        {{"sigma_1", CycleClass::schubert(g24, {1}), "special"},
         {"sigma_2", CycleClass::schubert(g24, {2}), "special"}},
        4);
    bool found_square = false, found_s2 = false;
    for (const auto& term : res.combination) {
      if (term.exponents == std::vector<int>{2, 0}) {
        found_square = term.coeff == Rational(1);
      } else if (term.exponents == std::vector<int>{0, 1}) {
        found_s2 = term.coeff == Rational(-1);
      }
    }
    c.expect(res.representable && found_square && found_s2 && res.combination.size() == 2,
             "sigma_{1,1} should be sigma_1^2 - sigma_2 in G(2,4)");
  }
  {
    auto p2 = RingModel::projective(2);
    const CycleClass hh = CycleClass::generator(p2, 0);
    const auto res = express_in_subalgebra(hh, {{"H2", hh.pow(2), "square"}}, 2);
    c.expect(!res.representable, "H must not be representable from {H^2} in P(2)");
  }
  return c.result("7 reduction checks");
}

}  // namespace

std::vector<SuiteResult> run_selftest() {
  return {suite_vandermonde(),     suite_xi_certificates(), suite_top_certificates(),
          suite_twist_oracle(),    suite_chern_character(), suite_ring_models(),
          suite_reduction()};
}

}  // namespace chernforge
