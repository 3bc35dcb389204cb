#include "chernforge/bundle.hpp"

#include "chernforge/errors.hpp"

namespace chernforge {

LineBundleSymbol LineBundleSymbol::make(std::string name, CycleClass c1,
                                        bool globally_generated) {
  int deg = 0;
  if (!c1.is_zero() && (!c1.is_homogeneous(&deg) || deg != 1))
    throw DegreeMismatch("c1 of line bundle " + name + " must be homogeneous of degree 1");
  return LineBundleSymbol{std::move(name), std::move(c1), globally_generated};
}

LineBundleSymbol line_power(const LineBundleSymbol& l, long m) {
  std::string name = l.name;
  if (m != 1) name += "^" + std::to_string(m);
  return LineBundleSymbol{std::move(name), l.c1.scale(Rational(m)),
                          m >= 1 && l.globally_generated};
}

LineBundleSymbol line_dual(const LineBundleSymbol& l) { return line_power(l, -1); }

FormalBundle FormalBundle::make(std::string name, int rank, std::vector<CycleClass> chern,
                                bool globally_generated, bool twist_globally_generated) {
  if (rank < 1) throw Error("bundle rank must be positive: " + name);
  if (static_cast<int>(chern.size()) != rank)
    throw DegreeMismatch("bundle " + name + " needs exactly rank=" + std::to_string(rank) +
                         " Chern classes");
  for (int k = 1; k <= rank; ++k) {
    int deg = 0;
    const CycleClass& c = chern[static_cast<std::size_t>(k) - 1];
    if (!c.is_zero() && (!c.is_homogeneous(&deg) || deg != k))
      throw DegreeMismatch("c_" + std::to_string(k) + "(" + name +
                           ") must be homogeneous of degree " + std::to_string(k));
    if (!c.model()->same(*chern.front().model()))
      throw ModelMismatch("Chern classes of " + name + " live in different models");
  }
  return FormalBundle{std::move(name), rank, std::move(chern), globally_generated,
                      twist_globally_generated};
}

CycleClass FormalBundle::chern_class(int k) const {
  if (k < 0) throw IndexOutOfRange("negative Chern class index");
  if (k == 0) return CycleClass::one(model());
  if (k > rank) return CycleClass::zero(model());
  return chern[static_cast<std::size_t>(k) - 1];
}

CycleClass FormalBundle::total_chern() const {
  CycleClass total = CycleClass::one(model());
  for (const auto& c : chern) total = total + c;
  return total;
}

FormalBundle tensor_line(const FormalBundle& e, const LineBundleSymbol& l) {
  if (!e.model()->same(*l.c1.model()))
    throw ModelMismatch("bundle " + e.name + " and line " + l.name +
                        " live in different models");
  const int r = e.rank;
  std::vector<CycleClass> twisted;
  twisted.reserve(static_cast<std::size_t>(r));
  for (int k = 1; k <= r; ++k) {
    CycleClass ck = CycleClass::zero(e.model());
    for (int i = 0; i <= k; ++i) {
      const Rational binom = Rational::binomial(r - i, k - i);
      if (binom.is_zero()) continue;
      ck = ck + (l.c1.pow(k - i) * e.chern_class(i)).scale(binom);
    }
    twisted.push_back(std::move(ck));
  }
  // gg (x) gg stays gg; the asserted twist flag makes E (x) L gg by fiat.
  const bool gg =
      (e.globally_generated && l.globally_generated) || e.twist_globally_generated;
  return FormalBundle{e.name + "(x)" + l.name, r, std::move(twisted), gg, false};
}

FormalBundle direct_sum(const FormalBundle& e, const FormalBundle& f) {
  if (!e.model()->same(*f.model()))
    throw ModelMismatch("bundles " + e.name + " and " + f.name + " live in different models");
  const int r = e.rank + f.rank;
  std::vector<CycleClass> chern;
  chern.reserve(static_cast<std::size_t>(r));
  for (int k = 1; k <= r; ++k) {
    CycleClass ck = CycleClass::zero(e.model());
    for (int i = 0; i <= k; ++i) ck = ck + e.chern_class(i) * f.chern_class(k - i);
    chern.push_back(std::move(ck));
  }
  return FormalBundle{e.name + "+" + f.name, r, std::move(chern),
                      e.globally_generated && f.globally_generated, false};
}

FormalBundle dual(const FormalBundle& e) {
  std::vector<CycleClass> chern;
  chern.reserve(e.chern.size());
  for (int k = 1; k <= e.rank; ++k)
    chern.push_back(e.chern_class(k).scale(Rational(k % 2 == 0 ? 1 : -1)));
  return FormalBundle{e.name + "^", e.rank, std::move(chern), false, false};
}

TopChern top_chern(const FormalBundle& e) {
  TopChern t{e.chern_class(e.rank), e.globally_generated, ""};
  if (t.lci)
    t.provenance = "top Chern class of globally generated bundle, hence lci";
  return t;
}

CycleClass chern_character(const FormalBundle& e, int truncation) {
  if (truncation < 0 || truncation > e.model()->top_degree())
    throw DegreeMismatch("chern_character truncation must lie in 0..topDegree");
  CycleClass ch = CycleClass::constant(e.model(), Rational(e.rank));
  std::vector<CycleClass> power_sums;  // p_1..p_truncation
  for (int k = 1; k <= truncation; ++k) {
    // Newton: p_k = sum_{j=1}^{k-1} (-1)^{j-1} e_j p_{k-j} + (-1)^{k-1} k e_k
    CycleClass pk = e.chern_class(k).scale(Rational(k % 2 == 1 ? k : -k));
    for (int j = 1; j < k; ++j) {
      const CycleClass& ej = e.chern_class(j);
      if (ej.is_zero()) continue;
      CycleClass term = ej * power_sums[static_cast<std::size_t>(k - j) - 1];
      pk = pk + term.scale(Rational(j % 2 == 1 ? 1 : -1));
    }
    ch = ch + pk.scale(Rational(1) / Rational::factorial(k));
    power_sums.push_back(std::move(pk));
  }
  return ch;
}

}  // namespace chernforge
