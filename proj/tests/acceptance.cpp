// Acceptance suite: runs the exact invariant suites 1-7 plus the front-end
// corpus checks, printing one pass/fail line per criterion. Exits nonzero if
// any criterion fails. Usage: acceptance <corpus-dir>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "chernforge/interpreter.hpp"
#include "chernforge/selftest.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int count_lines(const std::string& text) {
  return 1 + static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

struct Criterion8 {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (!pass) detail << "; ";
    pass = false;
    detail << what;
  }
};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <corpus-dir>\n";
    return 2;
  }
  const fs::path corpus(argv[1]);

  bool all_pass = true;
  int criterion = 0;
  for (const auto& suite : chernforge::run_selftest()) {
    ++criterion;
    std::cout << (suite.pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << " ("
              << suite.name << "): " << suite.detail << "\n";
    all_pass = all_pass && suite.pass;
  }

  Criterion8 c8;
  c8.expect(criterion == 7, "selftest must run exactly the suites 1-7");

  std::vector<fs::path> programs, malformed;
  for (const auto& entry : fs::directory_iterator(corpus))
    if (entry.is_regular_file() && entry.path().extension() == ".cf")
      programs.push_back(entry.path());
  for (const auto& entry : fs::directory_iterator(corpus / "bad"))
    if (entry.is_regular_file() && entry.path().extension() == ".cf")
      malformed.push_back(entry.path());
  std::sort(programs.begin(), programs.end());
  std::sort(malformed.begin(), malformed.end());

  c8.expect(programs.size() >= 10,
            "corpus has only " + std::to_string(programs.size()) + " programs");

  chernforge::ExecOptions options;
  options.json = true;
  options.verify = true;

  for (const auto& path : programs) {
    const std::string source = slurp(path);
    const std::string name = path.filename().string();

    const chernforge::ParseResult parsed = chernforge::parse(source);
    c8.expect(parsed.ok(), name + " failed to parse");
    if (!parsed.ok()) continue;

    // Round-trip stability of the pretty-printer.
    const std::string printed = chernforge::pretty_print(*parsed.program);
    const chernforge::ParseResult reparsed = chernforge::parse(printed);
    c8.expect(reparsed.ok() && chernforge::pretty_print(*reparsed.program) == printed,
              name + " pretty-print round trip is not a fixed point");

    // Byte-identical canonical JSON across two executions.
    const chernforge::Report first = chernforge::run_source(source, options);
    const chernforge::Report second = chernforge::run_source(source, options);
    c8.expect(chernforge::emit_json(first) == chernforge::emit_json(second),
              name + " JSON differs across runs");
    c8.expect(first.exit_code() == 0, name + " exited nonzero");
  }

  c8.expect(!malformed.empty(), "no malformed fixtures found");
  for (const auto& path : malformed) {
    const std::string source = slurp(path);
    const std::string name = path.filename().string();
    const chernforge::Report report = chernforge::run_source(source, options);
    c8.expect(report.exit_code() != 0, name + " should exit nonzero");
    c8.expect(!report.diagnostics.empty(), name + " produced no diagnostics");
    const int lines = count_lines(source);
    for (const auto& d : report.diagnostics) {
      c8.expect(d.pos.line >= 1 && d.pos.line <= lines,
                name + " diagnostic line out of range");
      c8.expect(d.pos.column >= 1, name + " diagnostic column out of range");
    }
  }

  std::cout << (c8.pass ? "[PASS]" : "[FAIL]") << " criterion 8 (front end): "
            << (c8.pass ? std::to_string(programs.size()) + " programs and " +
                              std::to_string(malformed.size()) +
                              " malformed fixtures behaved as specified"
                        : c8.detail.str())
            << "\n";
  all_pass = all_pass && c8.pass;

  return all_pass ? 0 : 1;
}
