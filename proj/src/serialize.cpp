#include "chernforge/serialize.hpp"

namespace chernforge {

nlohmann::json to_json(const CycleClass& c) {
  nlohmann::json terms = nlohmann::json::array();
  const bool schubert = c.model()->kind() == RingKind::Grassmannian;
  for (const auto& [mono, coeff] : c.sorted_terms()) {
    nlohmann::json term;
    if (schubert)
      term["partition"] = mono;
    else
      term["monomial"] = mono;
    term["coeff"] = coeff.str();
    terms.push_back(std::move(term));
  }
  return nlohmann::json{{"model", c.model()->id()}, {"terms", std::move(terms)}};
}

nlohmann::json to_json(const FormalBundle& e) {
  nlohmann::json chern = nlohmann::json::array();
  for (const auto& c : e.chern) chern.push_back(to_json(c));
  return nlohmann::json{{"name", e.name},
                        {"rank", e.rank},
                        {"chern", std::move(chern)},
                        {"globally_generated", e.globally_generated}};
}

nlohmann::json to_json(const LineBundleSymbol& l) {
  return nlohmann::json{{"name", l.name},
                        {"c1", to_json(l.c1)},
                        {"globally_generated", l.globally_generated}};
}

nlohmann::json to_json(const Certificate& cert) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& [coeff, atom] : cert.atoms)
    atoms.push_back(nlohmann::json{{"k", atom.k}, {"coeff", coeff.str()}});
  nlohmann::json target;
  if (cert.target == Certificate::Target::TopChern)
    target = "c_top";
  else
    target = nlohmann::json{{"xi", cert.xi_index}};
  return nlohmann::json{{"target", std::move(target)},
                        {"rank", cert.rank},
                        {"atoms", std::move(atoms)},
                        {"assumptions", cert.assumptions},
                        {"verified_in", cert.verified_in}};
}

nlohmann::json to_json(const LciReport& report) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& just : report.atoms)
    atoms.push_back(nlohmann::json{{"k", just.atom.k},
                                   {"consumes", just.consumes},
                                   {"reasoning", just.reasoning}});
  return nlohmann::json{{"atoms", std::move(atoms)},
                        {"required", report.required},
                        {"missing", report.missing},
                        {"conditional", report.conditional},
                        {"note", report.note}};
}

}  // namespace chernforge
