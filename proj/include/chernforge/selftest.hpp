#pragma once

#include <string>
#include <vector>

namespace chernforge {

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Exact, oracle-backed invariant suites over the whole stack:
///   1 Vandermonde fidelity          5 Chern character homomorphism
///   2 x_i certificates              6 ring models
///   3 top-Chern certificates        7 reduction checks
///   4 twist-formula oracle equivalence
/// Everything is checked with exact equality; there are no tolerances.
std::vector<SuiteResult> run_selftest();

}  // namespace chernforge
