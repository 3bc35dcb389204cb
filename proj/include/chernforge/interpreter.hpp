#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "chernforge/dsl.hpp"

namespace chernforge {

struct ExecOptions {
  bool json = false;
  bool verify = false;
  int max_degree = -1;  // bound for express queries; -1 means the model's top degree
};

struct Report {
  nlohmann::json results = nlohmann::json::array();
  nlohmann::json checks = nlohmann::json::array();
  std::vector<Diagnostic> diagnostics;
  std::vector<std::string> text;
  bool any_error = false;
  bool any_failed_verification = false;

  int exit_code() const { return any_error || any_failed_verification ? 1 : 0; }
  nlohmann::json document() const;
};

/// Deterministic evaluation in statement order. Runtime problems become
/// positioned diagnostics in the report, never exceptions.
Report execute(const Program& program, const ExecOptions& options);

/// Canonical JSON: sorted keys, byte-identical across runs for equal input.
std::string emit_json(const Report& report);

std::string emit_text(const Report& report, bool color);

/// Convenience wrapper used by the CLI and the bindings: parse + execute.
/// Parse failures yield a report with diagnostics and no results.
Report run_source(std::string_view source, const ExecOptions& options);

}  // namespace chernforge
