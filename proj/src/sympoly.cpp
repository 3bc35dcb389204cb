#include "chernforge/sympoly.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

#include "chernforge/errors.hpp"

namespace chernforge {

std::optional<std::size_t> VarSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

SymPoly SymPoly::constant(VarSetPtr vars, const Rational& q) {
  SymPoly p(std::move(vars));
  if (!q.is_zero()) p.terms_.emplace(std::vector<int>(p.vars_->size(), 0), q);
  return p;
}

SymPoly SymPoly::variable(VarSetPtr vars, std::size_t index) {
  SymPoly p(std::move(vars));
  std::vector<int> mono(p.vars_->size(), 0);
  mono.at(index) = 1;
  p.terms_.emplace(std::move(mono), Rational(1));
  return p;
}

SymPoly SymPoly::scale(const Rational& q) const {
  SymPoly p(vars_);
  if (q.is_zero()) return p;
  for (const auto& [mono, coeff] : terms_) p.terms_.emplace(mono, coeff * q);
  return p;
}

SymPoly operator+(const SymPoly& a, const SymPoly& b) {
  assert(a.vars_->same(*b.vars_));
  SymPoly p(a.vars_);
  p.terms_ = a.terms_;
  for (const auto& [mono, coeff] : b.terms_) {
    auto [it, inserted] = p.terms_.emplace(mono, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) p.terms_.erase(it);
    }
  }
  return p;
}

SymPoly operator-(const SymPoly& a, const SymPoly& b) { return a + (-b); }

SymPoly operator*(const SymPoly& a, const SymPoly& b) {
  assert(a.vars_->same(*b.vars_));
  SymPoly p(a.vars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      std::vector<int> mono(ma.size());
      for (std::size_t i = 0; i < ma.size(); ++i) mono[i] = ma[i] + mb[i];
      auto [it, inserted] = p.terms_.emplace(std::move(mono), ca * cb);
      if (!inserted) {
        it->second += ca * cb;
        if (it->second.is_zero()) p.terms_.erase(it);
      }
    }
  return p;
}

SymPoly SymPoly::pow(int e) const {
  assert(e >= 0);
  SymPoly acc = constant(vars_, Rational(1));
  for (int i = 0; i < e; ++i) acc = acc * *this;
  return acc;
}

SymPoly SymPoly::swap_vars(std::size_t i, std::size_t j) const {
  SymPoly p(vars_);
  for (const auto& [mono, coeff] : terms_) {
    std::vector<int> m = mono;
    std::swap(m[i], m[j]);
    p.terms_.emplace(std::move(m), coeff);
  }
  return p;
}

bool SymPoly::symmetric_in(const std::vector<std::size_t>& root_vars) const {
  for (std::size_t i = 0; i + 1 < root_vars.size(); ++i)
    if (swap_vars(root_vars[i], root_vars[i + 1]) != *this) return false;
  return true;
}

std::string SymPoly::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<std::vector<int>, Rational>> sorted(terms_.begin(), terms_.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    const int dx = std::accumulate(x.first.begin(), x.first.end(), 0);
    const int dy = std::accumulate(y.first.begin(), y.first.end(), 0);
    if (dx != dy) return dx < dy;
    return x.first < y.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, coeff] : sorted) {
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
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] == 0) continue;
      if (!monostr.empty()) monostr += "*";
      monostr += vars_->name(i);
      if (mono[i] > 1) monostr += "^" + std::to_string(mono[i]);
    }
    if (monostr.empty())
      os << c.str();
    else if (c.is_one())
      os << monostr;
    else
      os << c.str() << "*" << monostr;
  }
  return os.str();
}

SymPoly elementary_shifted(const VarSetPtr& vars, const std::vector<std::size_t>& root_vars,
                           int k, const SymPoly& shift) {
  if (k < 0 || k > static_cast<int>(root_vars.size())) return SymPoly::zero(vars);
  // DP over the roots: e[j] <- e[j] + root * e[j-1].
  std::vector<SymPoly> e;
  e.reserve(static_cast<std::size_t>(k) + 1);
  e.push_back(SymPoly::constant(vars, Rational(1)));
  for (int j = 1; j <= k; ++j) e.push_back(SymPoly::zero(vars));
  for (std::size_t idx = 0; idx < root_vars.size(); ++idx) {
    const SymPoly root = SymPoly::variable(vars, root_vars[idx]) + shift;
    const int hi = std::min<int>(k, static_cast<int>(idx) + 1);
    for (int j = hi; j >= 1; --j)
      e[static_cast<std::size_t>(j)] =
          e[static_cast<std::size_t>(j)] + root * e[static_cast<std::size_t>(j) - 1];
  }
  return e[static_cast<std::size_t>(k)];
}

ElementaryForm to_elementary(const SymPoly& p, const std::vector<std::size_t>& root_vars) {
  if (!p.symmetric_in(root_vars))
    throw NotSymmetric("polynomial is not symmetric in the Chern roots: " + p.str());

  const std::size_t r = root_vars.size();
  const auto& src_vars = *p.vars();
  std::vector<bool> is_root(src_vars.size(), false);
  for (auto v : root_vars) is_root[v] = true;
  std::vector<std::size_t> passthrough;
  for (std::size_t i = 0; i < src_vars.size(); ++i)
    if (!is_root[i]) passthrough.push_back(i);

  std::vector<std::string> out_names;
  for (std::size_t i = 1; i <= r; ++i) out_names.push_back("e" + std::to_string(i));
  for (auto v : passthrough) out_names.push_back(src_vars.name(v));
  auto out_vars = std::make_shared<const VarSet>(std::move(out_names));

  // Group the terms by their passthrough exponents; within a group the
  // root part is itself symmetric.
  using Mono = std::vector<int>;
  std::map<Mono, std::map<Mono, Rational>> groups;  // passthrough expo -> root expo -> coeff
  for (const auto& [mono, coeff] : p.terms()) {
    Mono pass(passthrough.size());
    for (std::size_t i = 0; i < passthrough.size(); ++i) pass[i] = mono[passthrough[i]];
    Mono root(r);
    for (std::size_t i = 0; i < r; ++i) root[i] = mono[root_vars[i]];
    groups[std::move(pass)].emplace(std::move(root), coeff);
  }

  // Precompute e_i(a_1..a_r) as root-arity exponent maps.
  auto local_names = std::vector<std::string>(r);
  for (std::size_t i = 0; i < r; ++i) local_names[i] = "a" + std::to_string(i + 1);
  auto local_vars = std::make_shared<const VarSet>(std::move(local_names));
  std::vector<std::size_t> local_roots(r);
  std::iota(local_roots.begin(), local_roots.end(), 0);
  std::vector<SymPoly> elem;
  elem.reserve(r + 1);
  for (std::size_t i = 0; i <= r; ++i)
    elem.push_back(elementary_shifted(local_vars, local_roots, static_cast<int>(i),
                                      SymPoly::zero(local_vars)));

  SymPoly out = SymPoly::zero(out_vars);
  for (auto& [pass, group] : groups) {
    std::map<Mono, Rational> work(group.begin(), group.end());
    while (!work.empty()) {
      // Lex-greatest root exponent; weakly decreasing for a symmetric poly.
      auto lead = std::prev(work.end());
      const Mono lambda = lead->first;
      const Rational c = lead->second;
      for (std::size_t i = 0; i + 1 < lambda.size(); ++i)
        if (lambda[i] < lambda[i + 1])
          throw NotSymmetric("leading exponent is not weakly decreasing");

      // e-monomial with exponents lambda_i - lambda_{i+1}.
      Mono emono(r, 0);
      SymPoly product = SymPoly::constant(local_vars, Rational(1));
      for (std::size_t i = 0; i < r; ++i) {
        const int next = i + 1 < r ? lambda[i + 1] : 0;
        emono[i] = lambda[i] - next;
        if (emono[i] > 0) product = product * elem[i + 1].pow(emono[i]);
      }

      for (const auto& [mono, pc] : product.terms()) {
        auto [it, inserted] = work.emplace(mono, -(pc * c));
        if (!inserted) {
          it->second -= pc * c;
          if (it->second.is_zero()) work.erase(it);
        }
      }

      Mono out_mono(out_vars->size(), 0);
      for (std::size_t i = 0; i < r; ++i) out_mono[i] = emono[i];
      for (std::size_t i = 0; i < pass.size(); ++i) out_mono[r + i] = pass[i];
      SymPoly term = SymPoly::constant(out_vars, c);
      for (std::size_t i = 0; i < out_mono.size(); ++i)
        if (out_mono[i] > 0) term = term * SymPoly::variable(out_vars, i).pow(out_mono[i]);
      out = out + term;
    }
  }
  return ElementaryForm{std::move(out), std::move(passthrough)};
}

OracleEnv OracleEnv::build(const std::vector<std::pair<std::string, int>>& bundles,
                           const std::vector<std::string>& lines) {
  OracleEnv env;
  std::vector<std::string> names;
  for (const auto& [name, rank] : bundles) {
    if (rank < 1) throw Error("oracle bundle rank must be positive: " + name);
    env.bundles_.push_back({name, rank, names.size()});
    for (int i = 1; i <= rank; ++i) names.push_back("a_" + name + "_" + std::to_string(i));
  }
  for (const auto& name : lines) {
    env.lines_.push_back({name, names.size()});
    names.push_back("l_" + name);
  }
  env.vars_ = std::make_shared<const VarSet>(std::move(names));
  return env;
}

const OracleEnv::BundleVars* OracleEnv::find_bundle(std::string_view name) const {
  for (const auto& b : bundles_)
    if (b.name == name) return &b;
  return nullptr;
}

const OracleEnv::LineVars* OracleEnv::find_line(std::string_view name) const {
  for (const auto& l : lines_)
    if (l.name == name) return &l;
  return nullptr;
}

std::vector<std::size_t> OracleEnv::roots_of(std::string_view bundle) const {
  const BundleVars* b = find_bundle(bundle);
  if (!b) {
    if (const LineVars* l = find_line(bundle)) return {l->var};
    throw UnknownSymbol("unknown bundle in oracle expression: " + std::string(bundle));
  }
  std::vector<std::size_t> roots(static_cast<std::size_t>(b->rank));
  std::iota(roots.begin(), roots.end(), b->first_var);
  return roots;
}

SymPoly OracleEnv::line_c1(std::string_view line) const {
  const LineVars* l = find_line(line);
  if (!l) throw UnknownSymbol("unknown line bundle in oracle expression: " + std::string(line));
  return SymPoly::variable(vars_, l->var);
}

SymPoly OracleEnv::chern_of(std::string_view bundle_or_line,
                            const std::vector<std::pair<std::string, long>>& twists,
                            int k) const {
  if (k < 0) throw IndexOutOfRange("negative Chern index in oracle expression");
  const auto roots = roots_of(bundle_or_line);
  SymPoly shift = SymPoly::zero(vars_);
  for (const auto& [line, power] : twists)
    shift = shift + line_c1(line).scale(Rational(power));
  return elementary_shifted(vars_, roots, k, shift);
}

OracleOutcome oracle_check(const SymPoly& lhs, const SymPoly& rhs) {
  OracleOutcome out;
  const SymPoly diff = lhs - rhs;
  out.equal = diff.is_zero();
  if (out.equal) {
    out.report = "expansions agree: " + lhs.str();
  } else {
    out.report = "expansions differ\n  lhs  = " + lhs.str() + "\n  rhs  = " + rhs.str() +
                 "\n  diff = " + diff.str();
  }
  return out;
}

}  // namespace chernforge
