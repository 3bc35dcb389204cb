#include "chernforge/certificate.hpp"

#include <algorithm>

#include "chernforge/errors.hpp"

namespace chernforge {

namespace {

// Row i of the inverse Vandermonde matrix, via V^T y = e_i.
std::vector<Rational> inverse_vandermonde_row(int r, int i) {
  const Matrix v = vandermonde_matrix(r);
  const std::size_t n = v.rows();
  Matrix vt(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) vt.at(a, b) = v.at(b, a);
  std::vector<Rational> e(n);
  e[static_cast<std::size_t>(i)] = Rational(1);
  return solve_linear(vt, e);
}

std::vector<std::string> canonical_assumptions() {
  return {kAssumptionLineGG, kAssumptionTwistGG};
}

}  // namespace

std::string Certificate::target_str() const {
  if (target == Target::TopChern) return "c_" + std::to_string(rank) + "(E)";
  return "c1(L)^" + std::to_string(xi_index) + "*c_" + std::to_string(rank - xi_index) +
         "(E(x)L)";
}

Certificate certify_xi(int r, int i) {
  if (r < 1) throw IndexOutOfRange("certify_xi requires rank >= 1");
  if (i < 0 || i > r)
    throw IndexOutOfRange("xi index " + std::to_string(i) + " outside 0.." + std::to_string(r));
  Certificate cert;
  cert.target = Certificate::Target::XiClass;
  cert.xi_index = i;
  cert.rank = r;
  cert.assumptions = canonical_assumptions();
  const auto row = inverse_vandermonde_row(r, i);
  for (int m = 0; m <= r; ++m) {
    const Rational& c = row[static_cast<std::size_t>(m)];
    if (c.is_zero()) continue;
    cert.atoms.push_back({c, TwistAtom{m + 1, r}});
  }
  return cert;
}

Certificate certify_top(int r) {
  if (r < 1) throw IndexOutOfRange("certify_top requires rank >= 1");

  // Path 1: c_r(E) = sum_i (-1)^i x_i, each x_i solved from the Vandermonde
  // system; collapse into coefficients on the atoms k = m+1.
  std::vector<Rational> composed(static_cast<std::size_t>(r) + 1);
  for (int i = 0; i <= r; ++i) {
    const auto row = inverse_vandermonde_row(r, i);
    const Rational sign(i % 2 == 0 ? 1 : -1);
    for (int m = 0; m <= r; ++m)
      composed[static_cast<std::size_t>(m)] += sign * row[static_cast<std::size_t>(m)];
  }

  // Path 2: the atom values are a degree-<=r polynomial in the twist
  // parameter; extrapolate the nodes 0..r to -1 in closed form.
  std::vector<long> nodes(static_cast<std::size_t>(r) + 1);
  for (int m = 0; m <= r; ++m) nodes[static_cast<std::size_t>(m)] = m;
  const auto extrapolated = lagrange_extrapolate_coeffs(nodes, -1);

  if (composed != extrapolated)
    throw Error("internal: Vandermonde and Lagrange paths disagree for rank " +
                std::to_string(r));

  Certificate cert;
  cert.target = Certificate::Target::TopChern;
  cert.rank = r;
  cert.assumptions = canonical_assumptions();
  for (int m = 0; m <= r; ++m)
    cert.atoms.push_back({composed[static_cast<std::size_t>(m)], TwistAtom{m + 1, r}});
  return cert;
}

CertificateCheck verify_certificate(const Certificate& cert, const FormalBundle& e,
                                    const LineBundleSymbol& l) {
  if (e.rank != cert.rank)
    throw ModelMismatch("certificate rank " + std::to_string(cert.rank) +
                        " does not match bundle rank " + std::to_string(e.rank));
  if (!e.model()->same(*l.c1.model()))
    throw ModelMismatch("bundle and line bundle live in different models");

  const int r = cert.rank;
  CycleClass target = CycleClass::zero(e.model());
  if (cert.target == Certificate::Target::TopChern) {
    target = e.chern_class(r);
  } else {
    target = l.c1.pow(cert.xi_index) * tensor_line(e, l).chern_class(r - cert.xi_index);
  }

  CycleClass combo = CycleClass::zero(e.model());
  for (const auto& [coeff, atom] : cert.atoms) {
    const FormalBundle twisted = tensor_line(e, line_power(l, atom.k));
    combo = combo + twisted.chern_class(r).scale(coeff);
  }

  CertificateCheck check{false, target - combo, ""};
  check.ok = check.residual.is_zero();
  check.message = check.ok ? "certificate reproduces " + cert.target_str() + " exactly"
                           : "residual: " + check.residual.str();
  return check;
}

OracleOutcome oracle_check_certificate(const Certificate& cert) {
  const int r = cert.rank;
  const OracleEnv env = OracleEnv::build({{"E", r}}, {"L"});

  SymPoly target = SymPoly::zero(env.vars());
  if (cert.target == Certificate::Target::TopChern) {
    target = env.chern_of("E", {}, r);
  } else {
    target = env.line_c1("L").pow(cert.xi_index) *
             env.chern_of("E", {{"L", 1}}, r - cert.xi_index);
  }

  SymPoly combo = SymPoly::zero(env.vars());
  for (const auto& [coeff, atom] : cert.atoms)
    combo = combo + env.chern_of("E", {{"L", atom.k}}, r).scale(coeff);

  return oracle_check(target, combo);
}

LciReport lci_flags_report(const Certificate& cert, bool line_gg, bool twist_gg) {
  LciReport report;
  bool needs_line = false;
  for (const auto& [coeff, atom] : cert.atoms) {
    AtomJustification just;
    just.atom = atom;
    just.consumes = {kAssumptionTwistGG};
    just.reasoning =
        "c_" + std::to_string(atom.rank) + "(E⊗L^" + std::to_string(atom.k) + ") = " +
        kAtomProvenance +
        ": it is the class of the zero scheme of a global section, a regular closed "
        "immersion on the Cohen-Macaulay ambient variety";
    if (atom.k >= 2) {
      // E (x) L^k = (E (x) L) (x) L^(k-1): global generation of the extra
      // factor also consumes the assumption on L.
      just.consumes.push_back(kAssumptionLineGG);
      needs_line = true;
    }
    report.atoms.push_back(std::move(just));
  }
  report.required = {kAssumptionTwistGG};
  if (needs_line) report.required.push_back(kAssumptionLineGG);
  if (!twist_gg) report.missing.push_back(kAssumptionTwistGG);
  if (needs_line && !line_gg) report.missing.push_back(kAssumptionLineGG);
  report.conditional = !report.missing.empty();
  report.note =
      "a reduced system of r-1 equations is available because the k=1 atom and c1(L)^r are "
      "already lci; recorded as an option, not implemented";
  return report;
}

}  // namespace chernforge
