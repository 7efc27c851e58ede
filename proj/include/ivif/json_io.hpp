#pragma once

#include <json.hpp>

#include "ivif/ivifn.hpp"
#include "ivif/model.hpp"

namespace ivif {

/// {"a": number, "spreads": [8 numbers], "shape": "linear"} — spread order
/// (mu_l, mu_r, mup_l, mup_r, nu_l, nu_r, nup_l, nup_r). Parsing validates
/// the number; only the linear shape is expressible in documents.
Ivifn ivifn_from_json(const nlohmann::json& j);
nlohmann::json ivifn_to_json(const Ivifn& x);

/// Solution as JSON: variables (name/value pairs in declaration order),
/// objective, stage_optima, branch_stats. Full double precision.
nlohmann::json solution_to_json(const Problem& p, const Solution& s);
Solution solution_from_json(const Problem& p, const nlohmann::json& j);

std::string permutation_to_string(const KeyPermutation& perm);

}  // namespace ivif
