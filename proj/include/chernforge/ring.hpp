#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chernforge/rational.hpp"

namespace chernforge {

enum class RingKind {
  UniversalTruncated,
  ProjectiveSpace,
  ProductOfProjectiveSpaces,
  Grassmannian,
};

struct Generator {
  std::string name;
  int degree = 1;
};

/// A presented graded commutative Q-algebra with a canonical normal form:
///   - UniversalTruncated: free on the declared generators, truncated above D
///   - ProjectiveSpace(n): Q[H]/(H^{n+1})
///   - ProductOfProjectiveSpaces(n_1..n_s): Q[H_1..H_s]/(H_t^{n_t+1})
///   - Grassmannian(k, n): Schubert basis over partitions in the k x (n-k) box,
///     special classes sigma_p = c_p(Q) (quotient-bundle convention)
/// Immutable after construction; share via shared_ptr.
class RingModel {
 public:
  static std::shared_ptr<const RingModel> projective(int n);
  static std::shared_ptr<const RingModel> product_of_projectives(std::vector<int> dims);
  static std::shared_ptr<const RingModel> grassmannian(int k, int n);
  static std::shared_ptr<const RingModel> universal(int truncation, std::vector<Generator> gens);

  RingKind kind() const { return kind_; }
  int top_degree() const { return top_degree_; }
  const std::vector<Generator>& generators() const { return generators_; }
  std::optional<std::size_t> generator_index(std::string_view name) const;

  int truncation() const { return truncation_; }        // UniversalTruncated
  int dimension() const { return dimension_; }          // ProjectiveSpace
  const std::vector<int>& dimensions() const { return dimensions_; }
  int grass_k() const { return grass_k_; }
  int grass_n() const { return grass_n_; }

  /// Stable identifier, e.g. "P(3)", "PxP(2,3)", "G(2,4)", "universal(4)".
  std::string id() const { return id_; }
  /// Convention metadata (fixed once): for Grassmannians the special classes
  /// are Chern classes of the tautological quotient bundle.
  std::string convention() const;

  bool same(const RingModel& o) const;

  /// Total degree of a canonical monomial: weighted exponent sum for
  /// polynomial kinds, partition weight for the Schubert basis.
  int monomial_degree(const std::vector<int>& mono) const;

  bool partition_in_box(const std::vector<int>& lambda) const;

 private:
  RingModel() = default;

  RingKind kind_ = RingKind::UniversalTruncated;
  std::vector<Generator> generators_;
  int top_degree_ = 0;
  int truncation_ = 0;
  int dimension_ = 0;
  std::vector<int> dimensions_;
  int grass_k_ = 0, grass_n_ = 0;
  std::string id_;
};

using ModelPtr = std::shared_ptr<const RingModel>;

/// An algebraic cycle class: element of the model's ring, held in canonical
/// normal form (reduced monomials, no zero coefficients, nothing above the
/// top degree). Keys are generator-exponent vectors, or partitions for the
/// Schubert basis. Immutable value semantics throughout.
class CycleClass {
 public:
  static CycleClass zero(ModelPtr model);
  static CycleClass one(ModelPtr model) { return constant(std::move(model), Rational(1)); }
  static CycleClass constant(ModelPtr model, const Rational& q);
  static CycleClass generator(ModelPtr model, std::size_t index);
  /// Grassmannian basis element sigma_lambda; throws PartitionOutOfBox.
  static CycleClass schubert(ModelPtr model, std::vector<int> lambda);
  /// Canonicalizes a raw formal polynomial given as (generator exponent
  /// vector, coefficient) pairs. For the Grassmannian the exponents are over
  /// the special classes and are rewritten into the Schubert basis.
  static CycleClass from_terms(ModelPtr model,
                               const std::vector<std::pair<std::vector<int>, Rational>>& raw);

  const ModelPtr& model() const { return model_; }
  const std::map<std::vector<int>, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// True when every term has the same total degree (zero is homogeneous of
  /// any degree). Sets *degree_out to that degree when non-zero.
  bool is_homogeneous(int* degree_out = nullptr) const;
  Rational coefficient(const std::vector<int>& mono) const;

  CycleClass degree_component(int d) const;

  CycleClass scale(const Rational& q) const;
  CycleClass pow(int e) const;

  friend CycleClass operator+(const CycleClass& a, const CycleClass& b);
  friend CycleClass operator-(const CycleClass& a, const CycleClass& b);
  friend CycleClass operator*(const CycleClass& a, const CycleClass& b);
  CycleClass operator-() const { return scale(Rational(-1)); }

  friend bool operator==(const CycleClass& a, const CycleClass& b);
  friend bool operator!=(const CycleClass& a, const CycleClass& b) { return !(a == b); }

  /// Terms sorted in graded-lex monomial order (serialization order).
  std::vector<std::pair<std::vector<int>, Rational>> sorted_terms() const;
  std::string str() const;

  /// Re-expresses this class in another model containing generators with the
  /// same names (polynomial kinds only); throws UnknownGenerator.
  CycleClass transport(const ModelPtr& target) const;

 private:
  CycleClass(ModelPtr model) : model_(std::move(model)) {}
  void insert_reduced(std::vector<int> mono, const Rational& coeff);

  ModelPtr model_;
  std::map<std::vector<int>, Rational> terms_;
};

/// Spec-level name for CycleClass::from_terms.
inline CycleClass normal_form(ModelPtr model,
                              const std::vector<std::pair<std::vector<int>, Rational>>& raw) {
  return CycleClass::from_terms(std::move(model), raw);
}

/// Pieri rule: sigma_lambda * sigma_p as a sum of Schubert classes inside the
/// box (horizontal strips). Requires 1 <= p <= n-k.
CycleClass pieri_multiply(const ModelPtr& model, const std::vector<int>& lambda, int p);

/// Evaluates the Jacobi-Trudi determinant det(sigma_{lambda_i + j - i}) by
/// iterated Pieri products; returns sigma_lambda in the Schubert basis.
CycleClass giambelli_expand(const ModelPtr& model, const std::vector<int>& lambda);

}  // namespace chernforge
