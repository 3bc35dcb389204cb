#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string_view>

#include "chernforge/interpreter.hpp"
#include "chernforge/selftest.hpp"

int main(int argc, char** argv) {
  CLI::App app{"chernforge: exact Chern-class calculus and lci certificates"};
  app.require_subcommand(1);

  std::string file, out_path;
  bool json = false, verify = false;
  int max_degree = -1;
  CLI::App* run = app.add_subcommand("run", "parse and execute a program file");
  run->add_option("file", file, "program to run")->required();
  run->add_flag("--json", json, "emit canonical JSON instead of text");
  run->add_flag("--verify", verify,
                "verify every emitted certificate in the active model and "
                "through the splitting-principle oracle");
  run->add_option("--max-degree", max_degree, "degree bound for express queries");
  run->add_option("--out", out_path, "write the report to this path");

  CLI::App* selftest = app.add_subcommand("selftest", "run the exact invariant suites 1-7");

  CLI11_PARSE(app, argc, argv);

  if (selftest->parsed()) {
    bool all = true;
    for (const auto& suite : chernforge::run_selftest()) {
      std::cout << (suite.pass ? "[PASS] " : "[FAIL] ") << suite.name << ": " << suite.detail
                << "\n";
      all = all && suite.pass;
    }
    return all ? 0 : 1;
  }

  std::ifstream in(file);
  if (!in) {
    std::cerr << "chernforge: cannot open " << file << "\n";
    return 2;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  const chernforge::ExecOptions options{json, verify, max_degree};
  const chernforge::Report report = chernforge::run_source(buffer.str(), options);

  const char* color_env = std::getenv("CHERNFORGE_COLOR");
  const bool color = color_env != nullptr && std::string_view(color_env) != "0" && !json;
  const std::string output =
      json ? chernforge::emit_json(report) : chernforge::emit_text(report, color);

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "chernforge: cannot write " << out_path << "\n";
      return 2;
    }
    out << output;
  } else {
    std::cout << output;
  }
  return report.exit_code();
}
