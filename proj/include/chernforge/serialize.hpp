#pragma once

#include <json.hpp>

#include "chernforge/bundle.hpp"
#include "chernforge/certificate.hpp"
#include "chernforge/reduction.hpp"

namespace chernforge {

/// {"model": id, "terms": [{"monomial": [...]} | {"partition": [...]}, "coeff": "num/den"]}
/// with terms sorted in graded-lex monomial order.
nlohmann::json to_json(const CycleClass& c);

/// {"name", "rank", "chern": [CycleClass...], "globally_generated"}
nlohmann::json to_json(const FormalBundle& e);

nlohmann::json to_json(const LineBundleSymbol& l);

/// {"target": "c_top" | {"xi": i}, "rank", "atoms": [{"k", "coeff"}],
///  "assumptions": [...], "verified_in": [...]}
nlohmann::json to_json(const Certificate& cert);

nlohmann::json to_json(const LciReport& report);

}  // namespace chernforge
