#include "chernforge/reduction.hpp"

#include <algorithm>
#include <set>

#include "chernforge/errors.hpp"

namespace chernforge {

SyzygyCheck verify_syzygy_identity(const SyzygyInstance& inst) {
  if (inst.p < 1) throw DegreeMismatch("codimension p must be positive");
  if (inst.sign != 1 && inst.sign != -1) throw Error("sign must be +1 or -1");
  int deg = 0;
  if (!inst.z.is_zero() && (!inst.z.is_homogeneous(&deg) || deg != inst.p))
    throw DegreeMismatch("cycle z must be homogeneous of degree p = " +
                         std::to_string(inst.p));
  int hdeg = 0;
  if (inst.hyperplane.is_zero() || !inst.hyperplane.is_homogeneous(&hdeg) || hdeg != 1)
    throw DegreeMismatch("hyperplane class must be homogeneous of degree 1");
  if (!inst.z.model()->same(*inst.e.model()) ||
      !inst.z.model()->same(*inst.hyperplane.model()))
    throw ModelMismatch("syzygy instance mixes ring models");

  const Rational factor = Rational(inst.sign) * Rational::factorial(inst.p - 1);
  const CycleClass lhs = inst.z.scale(factor);
  const CycleClass rhs =
      inst.e.chern_class(inst.p) - inst.hyperplane.pow(inst.p).scale(Rational(inst.n));

  SyzygyCheck check{false, rhs - lhs};
  check.ok = check.residual.is_zero();
  return check;
}

bool kleiman_smooth_bound(long d, long i) {
  // i < (d+2)/2 without leaving the integers.
  return 2 * i < d + 2;
}

ExpressResult express_in_subalgebra(const CycleClass& target,
                                    const std::vector<SubalgebraGenerator>& generators,
                                    int max_degree) {
  const ModelPtr& model = target.model();
  if (max_degree < 0 || max_degree > model->top_degree())
    throw DegreeMismatch("max_degree must lie in 0..topDegree of the model");

  std::vector<int> gen_degrees;
  for (const auto& gen : generators) {
    if (!gen.cls.model()->same(*model))
      throw ModelMismatch("generator " + gen.name + " lives in a different model");
    int d = 0;
    if (gen.cls.is_zero() || !gen.cls.is_homogeneous(&d) || d < 1)
      throw DegreeMismatch("generator " + gen.name +
                           " must be homogeneous of positive degree");
    gen_degrees.push_back(d);
  }

  ExpressResult result;
  if (target.is_zero()) {
    result.representable = true;
    result.message = "target is zero";
    return result;
  }

  std::set<int> target_degrees;
  for (const auto& [mono, coeff] : target.terms())
    target_degrees.insert(model->monomial_degree(mono));
  for (int d : target_degrees)
    if (d > max_degree) {
      result.representable = false;
      result.message = "not representable: target has degree " + std::to_string(d) +
                       " above the bound " + std::to_string(max_degree);
      return result;
    }

  // Enumerate generator-product exponent vectors of total degree within the
  // target's degree set, in graded-lex order over the declared generators.
  std::vector<std::vector<int>> exponents;
  std::vector<int> current(generators.size(), 0);
  auto rec = [&](auto&& self, std::size_t idx, int degree) -> void {
    if (degree > max_degree) return;
    if (idx == generators.size()) {
      if (target_degrees.count(degree)) exponents.push_back(current);
      return;
    }
    for (int e = 0;; ++e) {
      const int d = degree + e * gen_degrees[idx];
      if (d > max_degree) break;
      current[idx] = e;
      self(self, idx + 1, d);
    }
    current[idx] = 0;
  };
  rec(rec, 0, 0);
  std::sort(exponents.begin(), exponents.end(), [&](const auto& x, const auto& y) {
    int dx = 0, dy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) dx += x[i] * gen_degrees[i];
    for (std::size_t i = 0; i < y.size(); ++i) dy += y[i] * gen_degrees[i];
    if (dx != dy) return dx < dy;
    return x < y;
  });

  // Evaluate the products, dropping zero classes and duplicates of classes
  // already seen (keeps the linear system minimal and deterministic).
  std::vector<std::vector<int>> kept_exponents;
  std::vector<CycleClass> kept_classes;
  for (const auto& expo : exponents) {
    CycleClass prod = CycleClass::one(model);
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (expo[i] > 0) prod = prod * generators[i].cls.pow(expo[i]);
    if (prod.is_zero()) continue;
    if (std::find(kept_classes.begin(), kept_classes.end(), prod) != kept_classes.end())
      continue;
    kept_exponents.push_back(expo);
    kept_classes.push_back(std::move(prod));
  }

  // Exact linear system over the union of basis monomials.
  std::set<std::vector<int>> monomials;
  for (const auto& [mono, coeff] : target.terms()) monomials.insert(mono);
  for (const auto& cls : kept_classes)
    for (const auto& [mono, coeff] : cls.terms()) monomials.insert(mono);

  Matrix a(monomials.size(), kept_classes.size());
  std::vector<Rational> b(monomials.size());
  std::size_t row = 0;
  for (const auto& mono : monomials) {
    for (std::size_t col = 0; col < kept_classes.size(); ++col)
      a.at(row, col) = kept_classes[col].coefficient(mono);
    b[row] = target.coefficient(mono);
    ++row;
  }

  auto solution = solve_consistent(a, b);
  if (!solution) {
    result.representable = false;
    result.message = "not representable within this generating set and degree bound";
    return result;
  }

  CycleClass check = CycleClass::zero(model);
  for (std::size_t col = 0; col < kept_classes.size(); ++col) {
    if ((*solution)[col].is_zero()) continue;
    result.combination.push_back({kept_exponents[col], (*solution)[col]});
    check = check + kept_classes[col].scale((*solution)[col]);
  }
  if (check != target)
    throw Error("internal: subalgebra solution failed the post-solve re-evaluation");
  result.representable = true;
  result.message = "solution re-evaluates to the target exactly";
  return result;
}

}  // namespace chernforge
