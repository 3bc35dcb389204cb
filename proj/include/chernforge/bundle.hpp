#pragma once

#include <string>
#include <vector>

#include "chernforge/ring.hpp"

namespace chernforge {

/// A line bundle symbol: a name, its first Chern class (homogeneous of
/// degree 1), and a caller-asserted global-generation flag. The flag is
/// geometric input and is never checked symbolically.
struct LineBundleSymbol {
  std::string name;
  CycleClass c1;
  bool globally_generated = false;

  static LineBundleSymbol make(std::string name, CycleClass c1, bool globally_generated);
};

/// L^{tensor m}: c1 scales by m; global generation survives only for m >= 1.
LineBundleSymbol line_power(const LineBundleSymbol& l, long m);

LineBundleSymbol line_dual(const LineBundleSymbol& l);

/// A purely formal vector bundle: rank plus Chern classes c_1..c_r (c_0 = 1
/// implicit), each homogeneous of its degree. Both generation flags are
/// caller-asserted: `globally_generated` speaks about this bundle itself,
/// `twist_globally_generated` asserts that E (x) L is globally generated for
/// the ambient line bundle of a certificate context.
struct FormalBundle {
  std::string name;
  int rank = 0;
  std::vector<CycleClass> chern;  // chern[k-1] = c_k
  bool globally_generated = false;
  bool twist_globally_generated = false;

  static FormalBundle make(std::string name, int rank, std::vector<CycleClass> chern,
                           bool globally_generated = false,
                           bool twist_globally_generated = false);

  const ModelPtr& model() const { return chern.front().model(); }
  /// c_k for k in 0..rank (c_0 = 1).
  CycleClass chern_class(int k) const;
  /// Total Chern class 1 + c_1 + ... + c_r.
  CycleClass total_chern() const;
};

/// Chern classes of E (x) L for a line bundle L:
/// c_k(E⊗L) = sum_{i=0}^{k} C(r-i, k-i) c1(L)^{k-i} c_i(E).
FormalBundle tensor_line(const FormalBundle& e, const LineBundleSymbol& l);

/// Whitney formula: c(E ⊕ F) = c(E) c(F).
FormalBundle direct_sum(const FormalBundle& e, const FormalBundle& f);

/// c_k(E^dual) = (-1)^k c_k(E).
FormalBundle dual(const FormalBundle& e);

struct TopChern {
  CycleClass value;
  /// Set iff the bundle's globally-generated flag was asserted: the top Chern
  /// class of a globally generated bundle is the class of the zero scheme of
  /// a section, a regular closed immersion.
  bool lci = false;
  std::string provenance;
};

TopChern top_chern(const FormalBundle& e);

/// ch(E) = rank + p_1 + p_2/2! + ... computed from c_1..c_r by Newton's
/// identities (e_k = 0 above the rank), truncated at total degree D.
CycleClass chern_character(const FormalBundle& e, int truncation);

}  // namespace chernforge
