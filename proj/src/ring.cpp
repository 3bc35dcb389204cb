#include "chernforge/ring.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

#include "chernforge/errors.hpp"

namespace chernforge {

namespace {

std::string join_ints(const std::vector<int>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

// Partitions are stored weakly decreasing with no trailing zeros.
std::vector<int> canonical_partition(std::vector<int> lambda) {
  while (!lambda.empty() && lambda.back() == 0) lambda.pop_back();
  for (std::size_t i = 0; i + 1 < lambda.size(); ++i)
    if (lambda[i] < lambda[i + 1])
      throw PartitionOutOfBox("partition parts must be weakly decreasing: [" +
                              join_ints(lambda, ',') + "]");
  for (int part : lambda)
    if (part < 0) throw PartitionOutOfBox("partition parts must be nonnegative");
  return lambda;
}

int partition_weight(const std::vector<int>& lambda) {
  return std::accumulate(lambda.begin(), lambda.end(), 0);
}

}  // namespace

std::shared_ptr<const RingModel> RingModel::projective(int n) {
  if (n < 0) throw Error("projective space dimension must be nonnegative");
  auto m = std::shared_ptr<RingModel>(new RingModel());
  m->kind_ = RingKind::ProjectiveSpace;
  m->dimension_ = n;
  m->top_degree_ = n;
  m->generators_ = {{"H", 1}};
  m->id_ = "P(" + std::to_string(n) + ")";
  return m;
}

std::shared_ptr<const RingModel> RingModel::product_of_projectives(std::vector<int> dims) {
  if (dims.empty()) throw Error("product of projective spaces needs at least one factor");
  auto m = std::shared_ptr<RingModel>(new RingModel());
  m->kind_ = RingKind::ProductOfProjectiveSpaces;
  m->dimensions_ = dims;
  m->top_degree_ = std::accumulate(dims.begin(), dims.end(), 0);
  for (std::size_t t = 0; t < dims.size(); ++t) {
    if (dims[t] < 0) throw Error("factor dimension must be nonnegative");
    m->generators_.push_back({"H" + std::to_string(t + 1), 1});
  }
  m->id_ = "PxP(" + join_ints(dims, ',') + ")";
  return m;
}

std::shared_ptr<const RingModel> RingModel::grassmannian(int k, int n) {
  if (!(0 < k && k < n)) throw Error("Grassmannian G(k,n) requires 0 < k < n");
  auto m = std::shared_ptr<RingModel>(new RingModel());
  m->kind_ = RingKind::Grassmannian;
  m->grass_k_ = k;
  m->grass_n_ = n;
  m->top_degree_ = k * (n - k);
  for (int p = 1; p <= n - k; ++p)
    m->generators_.push_back({"sigma_" + std::to_string(p), p});
  m->id_ = "G(" + std::to_string(k) + "," + std::to_string(n) + ")";
  return m;
}

std::shared_ptr<const RingModel> RingModel::universal(int truncation,
                                                      std::vector<Generator> gens) {
  if (truncation < 0) throw Error("truncation degree must be nonnegative");
  auto m = std::shared_ptr<RingModel>(new RingModel());
  m->kind_ = RingKind::UniversalTruncated;
  m->truncation_ = truncation;
  m->top_degree_ = truncation;
  for (const auto& g : gens) {
    if (g.degree < 1) throw Error("generator degree must be >= 1: " + g.name);
    if (m->generator_index(g.name)) throw Error("duplicate generator name: " + g.name);
  }
  m->generators_ = std::move(gens);
  m->id_ = "universal(" + std::to_string(truncation) + ")";
  return m;
}

std::optional<std::size_t> RingModel::generator_index(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return i;
  return std::nullopt;
}

std::string RingModel::convention() const {
  if (kind_ == RingKind::Grassmannian)
    return "sigma_p = c_p(Q), Q the tautological quotient bundle";
  return "";
}

bool RingModel::same(const RingModel& o) const {
  if (kind_ != o.kind_ || top_degree_ != o.top_degree_) return false;
  if (generators_.size() != o.generators_.size()) return false;
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name != o.generators_[i].name ||
        generators_[i].degree != o.generators_[i].degree)
      return false;
  return id_ == o.id_;
}

int RingModel::monomial_degree(const std::vector<int>& mono) const {
  if (kind_ == RingKind::Grassmannian) return partition_weight(mono);
  int d = 0;
  for (std::size_t i = 0; i < mono.size(); ++i) d += mono[i] * generators_[i].degree;
  return d;
}

bool RingModel::partition_in_box(const std::vector<int>& lambda) const {
  if (kind_ != RingKind::Grassmannian) return false;
  if (static_cast<int>(lambda.size()) > grass_k_) return false;
  for (int part : lambda)
    if (part < 0 || part > grass_n_ - grass_k_) return false;
  return true;
}

// ---------------------------------------------------------------------------
// CycleClass

CycleClass CycleClass::zero(ModelPtr model) { return CycleClass(std::move(model)); }

CycleClass CycleClass::constant(ModelPtr model, const Rational& q) {
  CycleClass c(std::move(model));
  if (!q.is_zero()) {
    std::vector<int> unit(c.model_->kind() == RingKind::Grassmannian
                              ? 0
                              : c.model_->generators().size(),
                          0);
    c.terms_.emplace(std::move(unit), q);
  }
  return c;
}

CycleClass CycleClass::generator(ModelPtr model, std::size_t index) {
  if (index >= model->generators().size())
    throw UnknownGenerator("generator index out of range");
  if (model->kind() == RingKind::Grassmannian) {
    // generator index i is the special class sigma_{i+1}
    return schubert(std::move(model), {static_cast<int>(index) + 1});
  }
  CycleClass c(model);
  std::vector<int> mono(model->generators().size(), 0);
  mono[index] = 1;
  c.insert_reduced(std::move(mono), Rational(1));
  return c;
}

CycleClass CycleClass::schubert(ModelPtr model, std::vector<int> lambda) {
  if (model->kind() != RingKind::Grassmannian)
    throw ModelMismatch("Schubert classes live in Grassmannian models only");
  lambda = canonical_partition(std::move(lambda));
  if (!model->partition_in_box(lambda))
    throw PartitionOutOfBox("partition [" + join_ints(lambda, ',') + "] does not fit the " +
                            std::to_string(model->grass_k()) + "x" +
                            std::to_string(model->grass_n() - model->grass_k()) + " box");
  CycleClass c(std::move(model));
  c.terms_.emplace(std::move(lambda), Rational(1));
  return c;
}

void CycleClass::insert_reduced(std::vector<int> mono, const Rational& coeff) {
  if (coeff.is_zero()) return;
  switch (model_->kind()) {
    case RingKind::UniversalTruncated:
      if (model_->monomial_degree(mono) > model_->truncation()) return;
      break;
    case RingKind::ProjectiveSpace:
      if (mono[0] > model_->dimension()) return;  // H^{n+1} = 0
      break;
    case RingKind::ProductOfProjectiveSpaces:
      for (std::size_t t = 0; t < mono.size(); ++t)
        if (mono[t] > model_->dimensions()[t]) return;  // H_t^{n_t+1} = 0
      break;
    case RingKind::Grassmannian:
      if (!model_->partition_in_box(mono)) return;
      break;
  }
  auto [it, inserted] = terms_.emplace(std::move(mono), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

namespace {

// Pieri step without the public-precondition checks: handles p = 0 (identity)
// and produces zero for p outside 1..n-k, as needed by determinant expansion.
void pieri_accumulate(const ModelPtr& model, const std::vector<int>& lambda, int p,
                      const Rational& coeff,
                      std::map<std::vector<int>, Rational>& out) {
  const int k = model->grass_k();
  const int width = model->grass_n() - model->grass_k();
  if (p == 0) {
    auto [it, inserted] = out.emplace(lambda, coeff);
    if (!inserted) it->second += coeff;
    return;
  }
  if (p < 0 || p > width) return;

  // Horizontal strips: mu >= lambda componentwise, mu_i <= lambda_{i-1},
  // |mu| = |lambda| + p, mu inside the box.
  std::vector<int> padded(lambda);
  padded.resize(static_cast<std::size_t>(k), 0);
  std::vector<int> mu(padded.size(), 0);
  std::vector<std::vector<int>> results;

  auto rec = [&](auto&& self, std::size_t row, int remaining) -> void {
    if (row == padded.size()) {
      if (remaining == 0) results.push_back(mu);
      return;
    }
    const int lo = padded[row];
    const int cap = row == 0 ? width : std::min(padded[row - 1], mu[row - 1]);
    for (int v = lo; v <= std::min(cap, lo + remaining); ++v) {
      mu[row] = v;
      self(self, row + 1, remaining - (v - lo));
    }
    mu[row] = 0;
  };
  rec(rec, 0, p);

  for (auto& r : results) {
    while (!r.empty() && r.back() == 0) r.pop_back();
    auto [it, inserted] = out.emplace(std::move(r), coeff);
    if (!inserted) it->second += coeff;
  }
}

// sigma_lambda * sigma_mu via the Giambelli permutation expansion of lambda
// applied to mu with iterated Pieri steps.
void schubert_product_accumulate(const ModelPtr& model, const std::vector<int>& lambda,
                                 const std::vector<int>& mu, const Rational& coeff,
                                 std::map<std::vector<int>, Rational>& out) {
  if (lambda.empty()) {
    auto [it, inserted] = out.emplace(mu, coeff);
    if (!inserted) it->second += coeff;
    return;
  }
  const std::size_t l = lambda.size();
  std::vector<std::size_t> perm(l);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int sign = 1;
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = i + 1; j < l; ++j)
        if (perm[i] > perm[j]) sign = -sign;

    std::vector<int> row_indices(l);
    bool dead = false;
    for (std::size_t i = 0; i < l && !dead; ++i) {
      const int e = lambda[i] + static_cast<int>(perm[i]) - static_cast<int>(i);
      if (e < 0) dead = true;
      row_indices[i] = e;
    }
    if (dead) continue;

    std::map<std::vector<int>, Rational> acc;
    acc.emplace(mu, coeff * Rational(sign));
    for (std::size_t i = 0; i < l; ++i) {
      if (row_indices[i] == 0) continue;
      std::map<std::vector<int>, Rational> next;
      for (const auto& [part, c] : acc) pieri_accumulate(model, part, row_indices[i], c, next);
      acc = std::move(next);
      if (acc.empty()) break;
    }
    for (const auto& [part, c] : acc) {
      auto [it, inserted] = out.emplace(part, c);
      if (!inserted) it->second += c;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

void prune_zeros(std::map<std::vector<int>, Rational>& terms) {
  for (auto it = terms.begin(); it != terms.end();)
    it = it->second.is_zero() ? terms.erase(it) : std::next(it);
}

}  // namespace

CycleClass CycleClass::from_terms(
    ModelPtr model, const std::vector<std::pair<std::vector<int>, Rational>>& raw) {
  CycleClass c(model);
  for (const auto& [expvec, coeff] : raw) {
    if (expvec.size() != model->generators().size())
      throw UnknownGenerator("raw monomial arity does not match the generator list");
    if (model->kind() == RingKind::Grassmannian) {
      // Exponents over the special classes: rewrite into the Schubert basis
      // by iterated Pieri steps starting from sigma_{empty}.
      std::map<std::vector<int>, Rational> acc;
      acc.emplace(std::vector<int>{}, coeff);
      for (std::size_t i = 0; i < expvec.size() && !acc.empty(); ++i) {
        if (expvec[i] < 0) throw UnknownGenerator("negative exponent in raw monomial");
        for (int rep = 0; rep < expvec[i]; ++rep) {
          std::map<std::vector<int>, Rational> next;
          for (const auto& [part, cf] : acc)
            pieri_accumulate(model, part, static_cast<int>(i) + 1, cf, next);
          acc = std::move(next);
        }
      }
      for (const auto& [part, cf] : acc) {
        auto [it, inserted] = c.terms_.emplace(part, cf);
        if (!inserted) it->second += cf;
      }
    } else {
      for (int e : expvec)
        if (e < 0) throw UnknownGenerator("negative exponent in raw monomial");
      c.insert_reduced(expvec, coeff);
    }
  }
  prune_zeros(c.terms_);
  return c;
}

bool CycleClass::is_homogeneous(int* degree_out) const {
  if (terms_.empty()) return true;
  const int d = model_->monomial_degree(terms_.begin()->first);
  for (const auto& [mono, coeff] : terms_)
    if (model_->monomial_degree(mono) != d) return false;
  if (degree_out) *degree_out = d;
  return true;
}

Rational CycleClass::coefficient(const std::vector<int>& mono) const {
  auto it = terms_.find(mono);
  return it == terms_.end() ? Rational(0) : it->second;
}

CycleClass CycleClass::degree_component(int d) const {
  CycleClass c(model_);
  for (const auto& [mono, coeff] : terms_)
    if (model_->monomial_degree(mono) == d) c.terms_.emplace(mono, coeff);
  return c;
}

CycleClass CycleClass::scale(const Rational& q) const {
  CycleClass c(model_);
  if (q.is_zero()) return c;
  for (const auto& [mono, coeff] : terms_) c.terms_.emplace(mono, coeff * q);
  return c;
}

CycleClass operator+(const CycleClass& a, const CycleClass& b) {
  if (!a.model_->same(*b.model_))
    throw ModelMismatch("cannot add classes from different models (" + a.model_->id() +
                        " vs " + b.model_->id() + ")");
  CycleClass c(a.model_);
  c.terms_ = a.terms_;
  for (const auto& [mono, coeff] : b.terms_) {
    auto [it, inserted] = c.terms_.emplace(mono, coeff);
    if (!inserted) it->second += coeff;
  }
  prune_zeros(c.terms_);
  return c;
}

CycleClass operator-(const CycleClass& a, const CycleClass& b) { return a + (-b); }

CycleClass operator*(const CycleClass& a, const CycleClass& b) {
  if (!a.model_->same(*b.model_))
    throw ModelMismatch("cannot multiply classes from different models (" + a.model_->id() +
                        " vs " + b.model_->id() + ")");
  CycleClass c(a.model_);
  if (a.model_->kind() == RingKind::Grassmannian) {
    for (const auto& [la, ca] : a.terms_)
      for (const auto& [mu, cb] : b.terms_)
        schubert_product_accumulate(a.model_, la, mu, ca * cb, c.terms_);
    prune_zeros(c.terms_);
    return c;
  }
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      std::vector<int> mono(ma.size());
      for (std::size_t i = 0; i < ma.size(); ++i) mono[i] = ma[i] + mb[i];
      c.insert_reduced(std::move(mono), ca * cb);
    }
  prune_zeros(c.terms_);
  return c;
}

CycleClass CycleClass::pow(int e) const {
  if (e < 0) throw Error("negative power of a cycle class");
  CycleClass acc = one(model_);
  for (int i = 0; i < e; ++i) acc = acc * *this;
  return acc;
}

bool operator==(const CycleClass& a, const CycleClass& b) {
  return a.model_->same(*b.model_) && a.terms_ == b.terms_;
}

std::vector<std::pair<std::vector<int>, Rational>> CycleClass::sorted_terms() const {
  std::vector<std::pair<std::vector<int>, Rational>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [this](const auto& x, const auto& y) {
    const int dx = model_->monomial_degree(x.first);
    const int dy = model_->monomial_degree(y.first);
    if (dx != dy) return dx < dy;
    return x.first < y.first;
  });
  return out;
}

std::string CycleClass::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, coeff] : sorted_terms()) {
    Rational c = coeff;
    if (first) {
      if (c.sign() < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
      if (c.sign() < 0) c = -c;
    }
    first = false;

    std::string monostr;
    if (model_->kind() == RingKind::Grassmannian) {
      if (!mono.empty()) monostr = "sigma[" + join_ints(mono, ',') + "]";
    } else {
      for (std::size_t i = 0; i < mono.size(); ++i) {
        if (mono[i] == 0) continue;
        if (!monostr.empty()) monostr += "*";
        monostr += model_->generators()[i].name;
        if (mono[i] > 1) monostr += "^" + std::to_string(mono[i]);
      }
    }
    if (monostr.empty()) {
      os << c.str();
    } else if (c.is_one()) {
      os << monostr;
    } else {
      os << c.str() << "*" << monostr;
    }
  }
  return os.str();
}

CycleClass CycleClass::transport(const ModelPtr& target) const {
  if (model_->kind() == RingKind::Grassmannian || target->kind() == RingKind::Grassmannian)
    throw ModelMismatch("transport between Schubert-basis models is not supported");
  std::vector<std::pair<std::vector<int>, Rational>> raw;
  for (const auto& [mono, coeff] : terms_) {
    std::vector<int> mapped(target->generators().size(), 0);
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] == 0) continue;
      auto idx = target->generator_index(model_->generators()[i].name);
      if (!idx)
        throw UnknownGenerator("target model lacks generator " + model_->generators()[i].name);
      mapped[*idx] = mono[i];
    }
    raw.emplace_back(std::move(mapped), coeff);
  }
  return from_terms(target, raw);
}

CycleClass pieri_multiply(const ModelPtr& model, const std::vector<int>& lambda, int p) {
  if (model->kind() != RingKind::Grassmannian)
    throw ModelMismatch("pieri_multiply requires a Grassmannian model");
  auto canon = canonical_partition(lambda);
  if (!model->partition_in_box(canon))
    throw PartitionOutOfBox("partition [" + join_ints(canon, ',') + "] does not fit the box");
  if (p < 1 || p > model->grass_n() - model->grass_k())
    throw PartitionOutOfBox("special class index " + std::to_string(p) + " outside 1.." +
                            std::to_string(model->grass_n() - model->grass_k()));
  std::map<std::vector<int>, Rational> acc;
  pieri_accumulate(model, canon, p, Rational(1), acc);
  CycleClass result = CycleClass::zero(model);
  for (const auto& [part, c] : acc)
    result = result + CycleClass::schubert(model, part).scale(c);
  return result;
}

CycleClass giambelli_expand(const ModelPtr& model, const std::vector<int>& lambda) {
  if (model->kind() != RingKind::Grassmannian)
    throw ModelMismatch("giambelli_expand requires a Grassmannian model");
  auto canon = canonical_partition(lambda);
  if (!model->partition_in_box(canon))
    throw PartitionOutOfBox("partition [" + join_ints(canon, ',') + "] does not fit the box");
  std::map<std::vector<int>, Rational> acc;
  schubert_product_accumulate(model, canon, {}, Rational(1), acc);
  prune_zeros(acc);
  CycleClass result = CycleClass::zero(model);
  for (const auto& [part, c] : acc)
    result = result + CycleClass::schubert(model, part).scale(c);
  return result;
}

}  // namespace chernforge
