#include <doctest.h>

#include <random>

#include "chernforge/certificate.hpp"
#include "chernforge/serialize.hpp"

using namespace chernforge;

namespace {

struct Generic {
  ModelPtr model;
  FormalBundle e;
  LineBundleSymbol l;
};

Generic generic_el(int r, int truncation) {
  std::vector<Generator> gens;
  for (int k = 1; k <= r; ++k) gens.push_back({"c" + std::to_string(k) + "_E", k});
  gens.push_back({"c1_L", 1});
  auto model = RingModel::universal(truncation, gens);
  std::vector<CycleClass> chern;
  for (int k = 0; k < r; ++k)
    chern.push_back(CycleClass::generator(model, static_cast<std::size_t>(k)));
  return {model,
          FormalBundle::make("E", r, std::move(chern), false, true),
          LineBundleSymbol::make("L", CycleClass::generator(model, static_cast<std::size_t>(r)),
                                 true)};
}

}  // namespace

TEST_CASE("certify_xi frozen small cases") {
  const Certificate x0 = certify_xi(3, 0);
  REQUIRE(x0.atoms.size() == 1);
  CHECK(x0.atoms[0].first == Rational(1));
  CHECK(x0.atoms[0].second.k == 1);

  const Certificate r1 = certify_xi(1, 1);
  REQUIRE(r1.atoms.size() == 2);
  CHECK(r1.atoms[0].first == Rational(-1));
  CHECK(r1.atoms[0].second.k == 1);
  CHECK(r1.atoms[1].first == Rational(1));
  CHECK(r1.atoms[1].second.k == 2);

  // Second finite difference for r=2, i=2.
  const Certificate r2 = certify_xi(2, 2);
  REQUIRE(r2.atoms.size() == 3);
  CHECK(r2.atoms[0].first == Rational(1, 2));
  CHECK(r2.atoms[1].first == Rational(-1));
  CHECK(r2.atoms[2].first == Rational(1, 2));

  CHECK_THROWS_AS(certify_xi(2, 3), IndexOutOfRange);
  CHECK_THROWS_AS(certify_xi(2, -1), IndexOutOfRange);
}

TEST_CASE("certify_top frozen small cases and the binomial closed form") {
  const Certificate r1 = certify_top(1);
  REQUIRE(r1.atoms.size() == 2);
  CHECK(r1.atoms[0].first == Rational(2));
  CHECK(r1.atoms[1].first == Rational(-1));

  const Certificate r2 = certify_top(2);
  REQUIRE(r2.atoms.size() == 3);
  CHECK(r2.atoms[0].first == Rational(3));
  CHECK(r2.atoms[1].first == Rational(-3));
  CHECK(r2.atoms[2].first == Rational(1));

  for (int r = 1; r <= 6; ++r) {
    const Certificate cert = certify_top(r);
    CHECK(static_cast<int>(cert.atoms.size()) == r + 1);
    Rational sum(0);
    int sign = 1;
    for (const auto& [coeff, atom] : cert.atoms) {
      CHECK(coeff == Rational(sign) * Rational::binomial(r + 1, atom.k));
      CHECK(coeff.is_integer());
      CHECK(!coeff.is_zero());
      sign = -sign;
      sum += coeff;
    }
    // Degree-preserving identity: the leading coefficients sum to 1.
    CHECK(sum == Rational(1));
  }
  CHECK_THROWS_AS(certify_top(0), IndexOutOfRange);
}

TEST_CASE("certificates verify with generic Chern classes") {
  for (int r = 1; r <= 4; ++r) {
    const Generic g = generic_el(r, r);
    CHECK(verify_certificate(certify_top(r), g.e, g.l).ok);
    for (int i = 0; i <= r; ++i) CHECK(verify_certificate(certify_xi(r, i), g.e, g.l).ok);
  }
}

TEST_CASE("a perturbed coefficient breaks verification with a nonzero residual") {
  const Generic g = generic_el(3, 3);
  Certificate cert = certify_top(3);
  cert.atoms[1].first += Rational(1);
  const CertificateCheck check = verify_certificate(cert, g.e, g.l);
  CHECK(!check.ok);
  CHECK(!check.residual.is_zero());
  CHECK(!oracle_check_certificate(cert).equal);
}

TEST_CASE("certificates specialize to concrete models") {
  // P^4 with c_1 = H, c_2 = H^2, l = H (spec instance for certify_xi(2,1)).
  auto p4 = RingModel::projective(4);
  const CycleClass h = CycleClass::generator(p4, 0);
  const FormalBundle e = FormalBundle::make("E", 2, {h, h.pow(2)}, false, true);
  const LineBundleSymbol l = LineBundleSymbol::make("L", h, true);
  CHECK(verify_certificate(certify_xi(2, 1), e, l).ok);
  CHECK(verify_certificate(certify_top(2), e, l).ok);

  std::mt19937 rng(31337);
  std::uniform_int_distribution<long> num(-3, 3);
  std::uniform_int_distribution<long> den(1, 2);
  auto q = [&] { return Rational(num(rng), den(rng)); };

  for (int trial = 0; trial < 5; ++trial) {
    // P^5
    {
      auto pn = RingModel::projective(5);
      const CycleClass hh = CycleClass::generator(pn, 0);
      const FormalBundle eb = FormalBundle::make(
          "E", 3, {hh.scale(q()), hh.pow(2).scale(q()), hh.pow(3).scale(q())});
      const LineBundleSymbol lb = LineBundleSymbol::make("L", hh.scale(q()), true);
      CHECK(verify_certificate(certify_top(3), eb, lb).ok);
      CHECK(verify_certificate(certify_xi(3, 2), eb, lb).ok);
    }
    // P^2 x P^2
    {
      auto pp = RingModel::product_of_projectives({2, 2});
      const CycleClass h1 = CycleClass::generator(pp, 0);
      const CycleClass h2 = CycleClass::generator(pp, 1);
      const FormalBundle eb = FormalBundle::make(
          "E", 2, {h1.scale(q()) + h2.scale(q()), (h1 * h2).scale(q()) + h1.pow(2).scale(q())});
      const LineBundleSymbol lb = LineBundleSymbol::make("L", h1.scale(q()) + h2.scale(q()),
                                                         true);
      CHECK(verify_certificate(certify_top(2), eb, lb).ok);
    }
    // G(2,4) with Schubert classes
    {
      auto gr = RingModel::grassmannian(2, 4);
      const CycleClass s1 = CycleClass::schubert(gr, {1});
      const CycleClass s2 = CycleClass::schubert(gr, {2});
      const CycleClass s11 = CycleClass::schubert(gr, {1, 1});
      const FormalBundle eb =
          FormalBundle::make("E", 2, {s1.scale(q()), s2.scale(q()) + s11.scale(q())});
      const LineBundleSymbol lb = LineBundleSymbol::make("L", s1.scale(q()), true);
      CHECK(verify_certificate(certify_top(2), eb, lb).ok);
    }
  }
}

TEST_CASE("verify_certificate rejects rank mismatches") {
  const Generic g = generic_el(2, 2);
  CHECK_THROWS_AS(verify_certificate(certify_top(3), g.e, g.l), ModelMismatch);
}

TEST_CASE("lci report spells out per-atom consumption") {
  const Certificate cert = certify_top(2);
  const LciReport full = lci_flags_report(cert, true, true);
  REQUIRE(full.atoms.size() == 3);
  CHECK(full.atoms[0].consumes == std::vector<std::string>{kAssumptionTwistGG});
  CHECK(full.atoms[1].consumes ==
        std::vector<std::string>{kAssumptionTwistGG, kAssumptionLineGG});
  CHECK(full.atoms[2].consumes ==
        std::vector<std::string>{kAssumptionTwistGG, kAssumptionLineGG});
  CHECK(full.required == std::vector<std::string>{kAssumptionTwistGG, kAssumptionLineGG});
  CHECK(!full.conditional);

  const LciReport missing_twist = lci_flags_report(cert, true, false);
  CHECK(missing_twist.conditional);
  CHECK(missing_twist.missing == std::vector<std::string>{kAssumptionTwistGG});

  const LciReport missing_line = lci_flags_report(cert, false, true);
  CHECK(missing_line.conditional);
  CHECK(missing_line.missing == std::vector<std::string>{kAssumptionLineGG});
  CHECK(!missing_line.note.empty());
}

TEST_CASE("certificate JSON follows the schema") {
  Certificate cert = certify_top(2);
  cert.verified_in.push_back("universal(2)");
  const nlohmann::json j = to_json(cert);
  CHECK(j["target"] == "c_top");
  CHECK(j["rank"] == 2);
  REQUIRE(j["atoms"].size() == 3);
  CHECK(j["atoms"][0]["k"] == 1);
  CHECK(j["atoms"][0]["coeff"] == "3");
  CHECK(j["assumptions"].size() == 2);
  CHECK(j["verified_in"][0] == "universal(2)");

  const nlohmann::json jx = to_json(certify_xi(2, 1));
  CHECK(jx["target"]["xi"] == 1);
}
