#include <doctest.h>

#include "chernforge/interpreter.hpp"

using namespace chernforge;

namespace {

Report run(const std::string& src, bool verify = false) {
  ExecOptions options;
  options.verify = verify;
  return run_source(src, options);
}

}  // namespace

TEST_CASE("happy path: the four-statement program parses and runs") {
  const ParseResult parsed =
      parse("model P(3); line L gg; bundle E rank 2 on P; certify_top E L;");
  REQUIRE(parsed.ok());
  CHECK(parsed.program->statements.size() == 4);
  // Concrete model without bindings: execution diagnoses, parse does not.
  const Report report = execute(*parsed.program, {});
  CHECK(report.any_error);
}

TEST_CASE("rank must be positive, with a position") {
  const ParseResult parsed = parse("model P(3);\nbundle E rank 0 chern = [H];");
  CHECK(!parsed.ok());
  REQUIRE(!parsed.diagnostics.empty());
  CHECK(parsed.diagnostics[0].message == "rank must be positive");
  CHECK(parsed.diagnostics[0].pos.line == 2);
  CHECK(parsed.diagnostics[0].pos.column > 1);
}

TEST_CASE("unknown bundle is a positioned runtime diagnostic") {
  const Report report = run("model universal(2);\nline L gg;\ncertify_top F L;");
  CHECK(report.any_error);
  REQUIRE(!report.diagnostics.empty());
  CHECK(report.diagnostics[0].message.find("unknown bundle 'F'") != std::string::npos);
  CHECK(report.diagnostics[0].pos.line == 3);
  CHECK(report.exit_code() != 0);
}

TEST_CASE("syntax errors recover at statement boundaries and all carry positions") {
  const ParseResult parsed = parse("model P(3)\nlet x = ;\nbundle rank 2;");
  CHECK(!parsed.ok());
  CHECK(parsed.diagnostics.size() >= 2);
  for (const auto& d : parsed.diagnostics) {
    CHECK(d.pos.line >= 1);
    CHECK(d.pos.column >= 1);
  }
}

TEST_CASE("certify_top for rank 2 reports (3, -3, 1) and verifies") {
  const Report report =
      run("model universal(2); line L gg; bundle E rank 2 gg_twist; certify_top E L;",
          /*verify=*/true);
  CHECK(!report.any_error);
  CHECK(!report.any_failed_verification);
  REQUIRE(report.results.size() == 1);
  const auto& entry = report.results[0];
  CHECK(entry["verified"] == true);
  CHECK(entry["certificate"]["atoms"][0]["coeff"] == "3");
  CHECK(entry["certificate"]["atoms"][1]["coeff"] == "-3");
  CHECK(entry["certificate"]["atoms"][2]["coeff"] == "1");
  CHECK(entry["certificate"]["verified_in"][0] == "universal(2)");
  CHECK(entry["lci_report"]["conditional"] == false);
  CHECK(report.exit_code() == 0);
}

TEST_CASE("kleiman query follows the exact bound") {
  const Report report = run("model P(4); kleiman d = 4 i = 3; kleiman d = 4 i = 2;");
  CHECK(!report.any_error);
  REQUIRE(report.checks.size() == 2);
  CHECK(report.checks[0]["verdict"] == false);
  CHECK(report.checks[1]["verdict"] == true);
  CHECK(report.exit_code() == 0);  // a false predicate is not a failure
}

TEST_CASE("ch query: exponential series for a line bundle in P(2)") {
  const Report report =
      run("model P(2); line L gg c1 = H; bundle M rank 1 chern = [H]; ch M upto 2;");
  CHECK(!report.any_error);
  REQUIRE(report.results.size() == 1);
  const auto& value = report.results[0]["value"];
  CHECK(value["terms"][0]["coeff"] == "1");
  CHECK(value["terms"][1]["coeff"] == "1");
  CHECK(value["terms"][2]["coeff"] == "1/2");
}

TEST_CASE("oracle query checks the Cor. twist identity and flags failures") {
  const std::string header = "model universal(3); line L gg; bundle E rank 3 gg_twist;\n";
  const Report good = run(header +
                          "oracle c(E@L, 3) == c(E,3) + c1_L*c(E,2) + c1_L^2*c(E,1) + "
                          "c1_L^3;");
  CHECK(!good.any_error);
  CHECK(!good.any_failed_verification);
  REQUIRE(good.results.size() == 1);
  CHECK(good.results[0]["equal"] == true);

  const Report bad = run(header + "oracle c(E@L, 1) == c(E, 1);");
  CHECK(!bad.any_error);
  CHECK(bad.any_failed_verification);
  CHECK(bad.exit_code() != 0);
  CHECK(bad.results[0]["oracle_report"].get<std::string>().find("3*l_L") !=
        std::string::npos);
}

TEST_CASE("syzygy and express queries land under checks") {
  const Report report = run(
      "model P(4);\n"
      "bundle E rank 2 chern = [0, 3*H^2];\n"
      "syzygy p = 2 n = 2 sign = + E = E z = H^2;\n"
      "express H^2 in [H];");
  CHECK(!report.any_error);
  REQUIRE(report.checks.size() == 2);
  CHECK(report.checks[0]["name"] == "verify_syzygy_identity");
  CHECK(report.checks[0]["verdict"] == true);
  CHECK(report.checks[1]["name"] == "express_in_subalgebra");
  CHECK(report.checks[1]["verdict"] == true);
  CHECK(report.checks[1]["coefficients"][0]["product"] == "H^2");
}

TEST_CASE("failed syzygy check fails the run") {
  const Report report = run(
      "model P(4); bundle E rank 2 chern = [0, 3*H^2];\n"
      "syzygy p = 2 n = 1 sign = + E = E z = H^2;");
  CHECK(report.any_failed_verification);
  CHECK(report.checks[0]["verdict"] == false);
  CHECK(report.checks[0]["residual"] == "H^2");
}

TEST_CASE("express NotRepresentable is reported but does not fail the run") {
  const Report report = run("model P(2); let q = H^2; express H in [q];");
  CHECK(!report.any_error);
  CHECK(!report.any_failed_verification);
  CHECK(report.checks[0]["verdict"] == false);
}

TEST_CASE("Grassmannian programs: sigma literals and expand") {
  const Report report = run(
      "model G(2,4); expand sigma_1*sigma_1; expand sigma[1]*sigma[2,1]; "
      "express sigma[1,1] in [sigma_1, sigma_2];");
  CHECK(!report.any_error);
  REQUIRE(report.results.size() == 2);
  const auto& first = report.results[0]["value"]["terms"];
  REQUIRE(first.size() == 2);
  CHECK(first[0]["partition"] == nlohmann::json::array({1, 1}));
  CHECK(first[1]["partition"] == nlohmann::json::array({2}));
  CHECK(report.results[1]["value"]["terms"][0]["partition"] ==
        nlohmann::json::array({2, 2}));
  CHECK(report.checks[0]["verdict"] == true);
}

TEST_CASE("empty program emits exactly the empty results document") {
  const Report report = run("");
  CHECK(emit_json(report) == "{\n  \"results\": []\n}\n");
  CHECK(report.exit_code() == 0);
}

TEST_CASE("execution and JSON are deterministic across runs") {
  const std::string src =
      "model universal(3); line L gg; bundle E rank 3 gg_twist;\n"
      "certify_top E L; certify_xi E L 1; ch E upto 3;\n"
      "kleiman d = 6 i = 3; oracle c(E@L,1) == c(E,1) + 3*c1_L;";
  ExecOptions options;
  options.verify = true;
  const std::string a = emit_json(run_source(src, options));
  const std::string b = emit_json(run_source(src, options));
  CHECK(a == b);
  CHECK(!a.empty());
}

TEST_CASE("pretty-print is a fixed point through reparsing") {
  const std::vector<std::string> sources = {
      "model P(3); line L gg c1 = H; bundle E rank 2 on P gg_twist chern = [H, "
      "1/2*H^2]; certify_top E L;",
      "model universal(4); line L gg; bundle E rank 3 gg_twist; let t = c(E@L^2, 2) - "
      "2*c1_E^2; oracle c(E@L,3) == c(E,3) + c1_L*c(E,2) + c1_L^2*c(E,1) + c1_L^3; "
      "expand -t^2 + (c1_E + c1_L)*c2_E;",
      "model G(2,4); expand sigma[2,1]*sigma_1; express sigma[1,1] in [sigma_1, "
      "sigma_2];",
      "model P(4); bundle E rank 2 chern = [0, 3*H^2]; syzygy p = 2 n = 2 sign = + E = E "
      "z = H^2; kleiman d = 4 i = 2;"};
  for (const auto& src : sources) {
    const ParseResult first = parse(src);
    REQUIRE(first.ok());
    const std::string printed = pretty_print(*first.program);
    const ParseResult second = parse(printed);
    REQUIRE(second.ok());
    CHECK(pretty_print(*second.program) == printed);
  }
}

TEST_CASE("universal declarations before the model are rejected") {
  const Report report = run("line L gg;");
  CHECK(report.any_error);
}

TEST_CASE("ch above the model's top degree is a diagnostic, not a crash") {
  const Report report = run("model universal(3); bundle E rank 2; ch E upto 9;");
  CHECK(report.any_error);
  CHECK(report.diagnostics[0].message.find("topDegree") != std::string::npos);
}

TEST_CASE("duplicate declarations are reported at their own statement") {
  const Report report = run("model universal(2);\nbundle E rank 2;\nbundle E rank 1;");
  CHECK(report.any_error);
  REQUIRE(!report.diagnostics.empty());
  CHECK(report.diagnostics[0].pos.line == 3);
  CHECK(report.diagnostics[0].message.find("already declared") != std::string::npos);
}

TEST_CASE("concrete models require explicit class bindings") {
  const Report lines = run("model P(3); line L gg;");
  CHECK(lines.any_error);
  const Report bundles = run("model P(3); bundle E rank 2;");
  CHECK(bundles.any_error);
}

TEST_CASE("bundle 'on' tag must match the active model") {
  const Report ok = run("model P(3); bundle E rank 1 on P chern = [H];");
  CHECK(!ok.any_error);
  const Report bad = run("model G(2,4); bundle E rank 1 on P chern = [sigma_1];");
  CHECK(bad.any_error);
}

TEST_CASE("reserved words cannot be declared") {
  const ParseResult parsed = parse("model P(3); let sigma = H;");
  CHECK(!parsed.ok());
}
