#pragma once

#include <string>
#include <vector>

#include "chernforge/bundle.hpp"
#include "chernforge/matrix.hpp"

namespace chernforge {

/// Inputs for the syzygy-identity check sign * (p-1)! * z = c_p(E) - n H^p.
/// E, n and sign are caller-provided data: the identity is checked, never
/// constructed (building E would require actual sheaf resolutions).
struct SyzygyInstance {
  CycleClass z;           // homogeneous of codimension p
  int p = 1;              // positive
  FormalBundle e;
  long n = 0;
  int sign = 1;           // +1 or -1, fixed by the caller
  CycleClass hyperplane;  // class of a hyperplane section, degree 1
};

struct SyzygyCheck {
  bool ok = false;
  CycleClass residual;  // (c_p(E) - n H^p) - sign (p-1)! z
};

SyzygyCheck verify_syzygy_identity(const SyzygyInstance& inst);

/// Dimension-range predicate for smoothability of i-cycles on a d-fold:
/// true iff i < (d+2)/2, decided by exact integer comparison.
bool kleiman_smooth_bound(long d, long i);

struct SubalgebraGenerator {
  std::string name;
  CycleClass cls;  // homogeneous
  std::string provenance;
};

struct ExpressTerm {
  std::vector<int> exponents;  // over the generator list
  Rational coeff;
};

struct ExpressResult {
  bool representable = false;
  std::vector<ExpressTerm> combination;
  std::string message;
};

/// Searches for an exact representation of `target` as a rational combination
/// of products of the generators, enumerating generator-product monomials in
/// graded-lex order up to `max_degree` and solving the exact linear system.
/// A NotRepresentable outcome only means: not representable within this
/// generating set and degree bound. Solutions are re-evaluated against the
/// target before being returned.
ExpressResult express_in_subalgebra(const CycleClass& target,
                                    const std::vector<SubalgebraGenerator>& generators,
                                    int max_degree);

}  // namespace chernforge
