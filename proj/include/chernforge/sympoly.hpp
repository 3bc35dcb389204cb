#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chernforge/rational.hpp"

namespace chernforge {

/// Fixed, ordered variable list shared by SymPoly values.
class VarSet {
 public:
  explicit VarSet(std::vector<std::string> names) : names_(std::move(names)) {}

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  bool same(const VarSet& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

/// Sparse polynomial over Q in the variables of a VarSet: Chern roots
/// a_1..a_r plus auxiliary line symbols. The oracle works in the free
/// polynomial ring with no truncation.
class SymPoly {
 public:
  static SymPoly zero(VarSetPtr vars) { return SymPoly(std::move(vars)); }
  static SymPoly constant(VarSetPtr vars, const Rational& q);
  static SymPoly variable(VarSetPtr vars, std::size_t index);

  const VarSetPtr& vars() const { return vars_; }
  const std::map<std::vector<int>, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  SymPoly scale(const Rational& q) const;
  SymPoly pow(int e) const;
  friend SymPoly operator+(const SymPoly& a, const SymPoly& b);
  friend SymPoly operator-(const SymPoly& a, const SymPoly& b);
  friend SymPoly operator*(const SymPoly& a, const SymPoly& b);
  SymPoly operator-() const { return scale(Rational(-1)); }

  friend bool operator==(const SymPoly& a, const SymPoly& b) {
    return a.vars_->same(*b.vars_) && a.terms_ == b.terms_;
  }
  friend bool operator!=(const SymPoly& a, const SymPoly& b) { return !(a == b); }

  /// Exchanges two variables (used for the adjacent-transposition
  /// symmetry check).
  SymPoly swap_vars(std::size_t i, std::size_t j) const;

  /// Invariance under the adjacent transpositions of the listed variables;
  /// those generate the full symmetric group on them.
  bool symmetric_in(const std::vector<std::size_t>& root_vars) const;

  /// Canonical human-readable form, terms in graded-lex order.
  std::string str() const;

 private:
  explicit SymPoly(VarSetPtr vars) : vars_(std::move(vars)) {}
  VarSetPtr vars_;
  std::map<std::vector<int>, Rational> terms_;
};

/// e_k of the listed root variables, each shifted by `shift`
/// (e.g. e_k(a_1 + m*l, ..., a_r + m*l)). k = 0 gives 1; k > #roots gives 0.
SymPoly elementary_shifted(const VarSetPtr& vars, const std::vector<std::size_t>& root_vars,
                           int k, const SymPoly& shift);

/// Result of rewriting a symmetric polynomial in elementary symmetric
/// polynomials: a polynomial over fresh variables e1..er followed by the
/// untouched non-root variables (original names preserved).
struct ElementaryForm {
  SymPoly poly;
  std::vector<std::size_t> passthrough;  // original indices of the non-root vars
};

/// Leading-term subtraction algorithm (fundamental theorem of symmetric
/// polynomials). `p` must be symmetric in root_vars; throws NotSymmetric.
ElementaryForm to_elementary(const SymPoly& p, const std::vector<std::size_t>& root_vars);

/// Evaluates a SymPoly by substituting ring values for its variables.
/// Value needs operator+, operator*, and scale(Rational).
template <typename Value>
Value evaluate_sympoly(const SymPoly& p, const std::vector<Value>& values, const Value& zero,
                       const Value& one) {
  Value acc = zero;
  for (const auto& [mono, coeff] : p.terms()) {
    Value t = one.scale(coeff);
    for (std::size_t i = 0; i < mono.size(); ++i)
      for (int rep = 0; rep < mono[i]; ++rep) t = t * values[i];
    acc = acc + t;
  }
  return acc;
}

/// Variable layout for splitting-principle expansions: one block of Chern
/// roots per declared bundle and one first-Chern symbol per line bundle.
class OracleEnv {
 public:
  struct BundleVars {
    std::string name;
    int rank;
    std::size_t first_var;  // roots occupy first_var .. first_var+rank-1
  };
  struct LineVars {
    std::string name;
    std::size_t var;
  };

  static OracleEnv build(const std::vector<std::pair<std::string, int>>& bundles,
                         const std::vector<std::string>& lines);

  const VarSetPtr& vars() const { return vars_; }
  const BundleVars* find_bundle(std::string_view name) const;
  const LineVars* find_line(std::string_view name) const;

  /// c_k(B (x) prod L_j^{m_j}) expanded in Chern roots: every root of B is
  /// shifted by sum m_j c1(L_j). Lines act as rank-1 bundles whose single
  /// root is their c1 symbol.
  SymPoly chern_of(std::string_view bundle_or_line,
                   const std::vector<std::pair<std::string, long>>& twists, int k) const;

  SymPoly line_c1(std::string_view line) const;
  std::vector<std::size_t> roots_of(std::string_view bundle) const;

 private:
  VarSetPtr vars_;
  std::vector<BundleVars> bundles_;
  std::vector<LineVars> lines_;
};

struct OracleOutcome {
  bool equal = false;
  std::string report;  // plain-text diff of canonical forms when not equal
};

/// Exact equality of two root expansions, with a counterexample report.
OracleOutcome oracle_check(const SymPoly& lhs, const SymPoly& rhs);

}  // namespace chernforge
