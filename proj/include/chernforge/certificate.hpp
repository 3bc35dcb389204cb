#pragma once

#include <string>
#include <vector>

#include "chernforge/bundle.hpp"
#include "chernforge/matrix.hpp"
#include "chernforge/sympoly.hpp"

namespace chernforge {

/// One certificate atom: the class c_r(E (x) L^{tensor k}). Each atom is the
/// top Chern class of a globally generated twist, hence carries lci
/// provenance once the certificate's assumptions are granted.
struct TwistAtom {
  int k = 1;     // twist exponent, 1..r+1 for atoms emitted here
  int rank = 1;  // rank of E
};

inline constexpr const char* kAtomProvenance =
    "top Chern class of globally generated bundle, hence lci";

inline constexpr const char* kAssumptionLineGG = "L globally generated";
inline constexpr const char* kAssumptionTwistGG = "E⊗L globally generated";

/// An exact rational linear combination of twist atoms representing a target
/// class, together with the geometric assumptions it consumes. Certificates
/// are emitted over the symbols (E, L); choosing a sufficiently ample L is
/// the caller's responsibility and is recorded in `assumptions`.
struct Certificate {
  enum class Target { XiClass, TopChern };

  Target target = Target::TopChern;
  int xi_index = -1;  // for Target::XiClass: x_i = c_1(L)^i c_{r-i}(E (x) L)
  int rank = 1;
  std::vector<std::pair<Rational, TwistAtom>> atoms;  // zero coefficients dropped
  std::vector<std::string> assumptions;
  std::vector<std::string> verified_in;  // model ids filled in by callers

  std::string target_str() const;
};

/// Certificate for x_i = c_1(L)^i c_{r-i}(E (x) L): coefficients are row i of
/// the inverse Vandermonde matrix, atoms are k = 1..r+1. Throws
/// IndexOutOfRange unless 0 <= i <= r.
Certificate certify_xi(int r, int i);

/// Certificate for the top Chern class c_r(E). Computed along two mandatory
/// independent paths (alternating-sum of Vandermonde-solve rows, and Lagrange
/// extrapolation of the nodes 0..r to -1) which must agree exactly; the
/// coefficients come out as (-1)^m binomial(r+1, m+1) on atom k = m+1.
Certificate certify_top(int r);

struct CertificateCheck {
  bool ok = false;
  CycleClass residual;  // target minus the atom combination
  std::string message;
};

/// Expands the target and every atom through the Chern calculus in the model
/// of E and L and compares exactly. In a universal truncated model with
/// D >= r this proves the identity with fully generic Chern classes.
CertificateCheck verify_certificate(const Certificate& cert, const FormalBundle& e,
                                    const LineBundleSymbol& l);

/// Independent verification through the splitting-principle oracle: both
/// sides expanded in Chern roots, no truncation.
OracleOutcome oracle_check_certificate(const Certificate& cert);

struct AtomJustification {
  TwistAtom atom;
  std::vector<std::string> consumes;  // assumption strings this atom relies on
  std::string reasoning;
};

struct LciReport {
  std::vector<AtomJustification> atoms;
  std::vector<std::string> required;  // union of per-atom consumption
  std::vector<std::string> missing;   // required assumptions not asserted by the caller
  bool conditional = false;           // true when something is missing
  std::string note;
};

/// Per-atom provenance reasoning: why each atom is asserted lci and which
/// caller-asserted flags that reasoning consumes. `line_gg` and `twist_gg`
/// report which assumptions the caller actually asserted.
LciReport lci_flags_report(const Certificate& cert, bool line_gg, bool twist_gg);

}  // namespace chernforge
