#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chernforge/certificate.hpp"
#include "chernforge/interpreter.hpp"
#include "chernforge/reduction.hpp"
#include "chernforge/selftest.hpp"
#include "chernforge/serialize.hpp"

namespace py = pybind11;
using namespace chernforge;

namespace {

py::object json_to_py(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::null:
      return py::none();
    case nlohmann::json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case nlohmann::json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case nlohmann::json::value_t::number_float:
      return py::float_(j.get<double>());
    case nlohmann::json::value_t::string:
      return py::str(j.get<std::string>());
    case nlohmann::json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(json_to_py(item));
      return out;
    }
    case nlohmann::json::value_t::object: {
      py::dict out;
      for (const auto& [key, value] : j.items()) out[py::str(key)] = json_to_py(value);
      return out;
    }
    default:
      return py::none();
  }
}

Matrix matrix_from_strings(const std::vector<std::vector<std::string>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows[0].size();
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Rational::parse(rows[i][j]);
  }
  return m;
}

}  // namespace

PYBIND11_MODULE(_chernforge, m) {
  m.doc() =
      "Exact Chern-class calculus in Chow rings: Vandermonde/Lagrange lci "
      "certificates, splitting-principle oracle, Schubert calculus, and the "
      "chernforge program language.";

  py::register_exception<Error>(m, "ChernforgeError");

  m.def(
      "certify_top",
      [](int r) { return json_to_py(to_json(certify_top(r))); }, py::arg("rank"),
      "Certificate expressing c_r(E) through top Chern classes of globally "
      "generated twists; coefficients (-1)^m C(r+1, m+1) on c_r(E(x)L^(m+1)).");
  m.def(
      "certify_xi",
      [](int r, int i) { return json_to_py(to_json(certify_xi(r, i))); }, py::arg("rank"),
      py::arg("i"),
      "Certificate for x_i = c1(L)^i c_{r-i}(E(x)L): row i of the inverse "
      "Vandermonde matrix paired with the twists k = 1..r+1.");
  m.def(
      "verify_top_universal",
      [](int r) {
        std::vector<Generator> gens;
        for (int k = 1; k <= r; ++k) gens.push_back({"c" + std::to_string(k) + "_E", k});
        gens.push_back({"c1_L", 1});
        auto model = RingModel::universal(r, gens);
        std::vector<CycleClass> chern;
        for (int k = 0; k < r; ++k)
          chern.push_back(CycleClass::generator(model, static_cast<std::size_t>(k)));
        const FormalBundle e = FormalBundle::make("E", r, std::move(chern), false, true);
        const LineBundleSymbol l = LineBundleSymbol::make(
            "L", CycleClass::generator(model, static_cast<std::size_t>(r)), true);
        const Certificate cert = certify_top(r);
        return verify_certificate(cert, e, l).ok && oracle_check_certificate(cert).equal;
      },
      py::arg("rank"),
      "Checks certify_top(rank) with fully generic Chern classes, both in the "
      "universal truncated ring and through the Chern-root oracle.");
  m.def(
      "vandermonde",
      [](int r) {
        const Matrix v = vandermonde_matrix(r);
        std::vector<std::vector<std::string>> out(v.rows());
        for (std::size_t i = 0; i < v.rows(); ++i)
          for (std::size_t j = 0; j < v.cols(); ++j) out[i].push_back(v.at(i, j).str());
        return out;
      },
      py::arg("r"), "The (r+1)x(r+1) matrix with entries m^i as exact strings.");
  m.def(
      "solve_linear",
      [](const std::vector<std::vector<std::string>>& a, const std::vector<std::string>& b) {
        std::vector<Rational> rhs;
        rhs.reserve(b.size());
        for (const auto& s : b) rhs.push_back(Rational::parse(s));
        const auto x = solve_linear(matrix_from_strings(a), rhs);
        std::vector<std::string> out;
        out.reserve(x.size());
        for (const auto& q : x) out.push_back(q.str());
        return out;
      },
      py::arg("a"), py::arg("b"),
      "Exact solve of a square rational system; entries are 'num/den' strings.");
  m.def(
      "lagrange_extrapolate_coeffs",
      [](const std::vector<long>& nodes, long target) {
        std::vector<std::string> out;
        for (const auto& q : lagrange_extrapolate_coeffs(nodes, target))
          out.push_back(q.str());
        return out;
      },
      py::arg("nodes"), py::arg("target"));
  m.def("kleiman_smooth_bound", &kleiman_smooth_bound, py::arg("d"), py::arg("i"),
        "True iff i < (d+2)/2, by exact integer comparison.");
  m.def(
      "run_program",
      [](const std::string& source, bool verify, int max_degree) {
        ExecOptions options;
        options.json = true;
        options.verify = verify;
        options.max_degree = max_degree;
        const Report report = run_source(source, options);
        py::dict out;
        out["document"] = json_to_py(report.document());
        out["exit_code"] = report.exit_code();
        py::list text;
        for (const auto& line : report.text) text.append(py::str(line));
        out["text"] = text;
        return out;
      },
      py::arg("source"), py::arg("verify") = false, py::arg("max_degree") = -1,
      "Parses and executes a chernforge program; returns the canonical JSON "
      "document, the exit code, and the human-readable report lines.");
  m.def(
      "selftest",
      []() {
        py::list out;
        for (const auto& suite : run_selftest()) {
          py::dict entry;
          entry["name"] = suite.name;
          entry["pass"] = suite.pass;
          entry["detail"] = suite.detail;
          out.append(entry);
        }
        return out;
      },
      "Runs the exact invariant suites 1-7 and reports each outcome.");

  m.attr("__version__") = "0.1.0";
}
