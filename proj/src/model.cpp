#include "ivif/model.hpp"

#include <set>
#include <sstream>

#include "ivif/json_io.hpp"

namespace ivif {

namespace {

using nlohmann::json;

const json& require_field(const json& j, const char* name,
                          const char* where) {
  auto it = j.find(name);
  if (it == j.end()) {
    std::ostringstream msg;
    msg << "schema error: missing field '" << name << "' in " << where;
    throw ParseError(msg.str());
  }
  return *it;
}

double number_field(const json& j, const char* name, const char* where) {
  const json& v = require_field(j, name, where);
  if (!v.is_number()) {
    std::ostringstream msg;
    msg << "schema error: field '" << name << "' in " << where
        << " must be a number";
    throw ParseError(msg.str());
  }
  return v.get<double>();
}

VarKind kind_from_string(const std::string& s) {
  if (s == "crisp-nonneg") return VarKind::crisp_nonneg;
  if (s == "crisp-unrestricted") return VarKind::crisp_unrestricted;
  if (s == "ivifn-nonneg") return VarKind::ivifn_nonneg;
  if (s == "ivifn-unrestricted") return VarKind::ivifn_unrestricted;
  throw ParseError("schema error: unknown variable kind '" + s + "'");
}

Relation relation_from_string(const std::string& s) {
  if (s == "eq") return Relation::eq;
  if (s == "leq") return Relation::leq;
  if (s == "geq") return Relation::geq;
  throw ParseError("schema error: unknown relation '" + s + "'");
}

}  // namespace

std::string to_string(VarKind k) {
  switch (k) {
    case VarKind::crisp_nonneg: return "crisp-nonneg";
    case VarKind::crisp_unrestricted: return "crisp-unrestricted";
    case VarKind::ivifn_nonneg: return "ivifn-nonneg";
    default: return "ivifn-unrestricted";
  }
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::eq: return "eq";
    case Relation::leq: return "leq";
    default: return "geq";
  }
}

std::string permutation_to_string(const KeyPermutation& perm) {
  static const char* letters = "SAMCDGH";
  std::string s(7, '?');
  for (int i = 0; i < 7; ++i) s[i] = letters[perm[i]];
  return s;
}

Ivifn ivifn_from_json(const json& j) {
  if (!j.is_object())
    throw ParseError("schema error: a fuzzy number must be a JSON object");
  const double a = number_field(j, "a", "fuzzy number");
  const json& spreads = require_field(j, "spreads", "fuzzy number");
  if (!spreads.is_array() || spreads.size() != 8)
    throw ParseError(
        "schema error: 'spreads' must be an array of 8 numbers");
  double s[8];
  for (int i = 0; i < 8; ++i) {
    if (!spreads[i].is_number())
      throw ParseError("schema error: 'spreads' entries must be numbers");
    s[i] = spreads[i].get<double>();
  }
  if (auto it = j.find("shape"); it != j.end()) {
    if (!it->is_string() || it->get<std::string>() != "linear")
      throw ParseError(
          "schema error: only the \"linear\" shape is expressible in "
          "documents");
  }
  Ivifn x(a, s[0], s[1], s[2], s[3], s[4], s[5], s[6], s[7]);
  validate(x);
  return x;
}

json ivifn_to_json(const Ivifn& x) {
  return json{{"a", x.a},
              {"spreads", {x.mu_l, x.mu_r, x.mup_l, x.mup_r, x.nu_l, x.nu_r,
                           x.nup_l, x.nup_r}},
              {"shape", "linear"}};
}

Problem parse(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what());
  }
  if (!doc.is_object())
    throw ParseError("schema error: top level must be a JSON object");

  Problem p;

  const json& sense = require_field(doc, "sense", "problem");
  if (!sense.is_string() ||
      (sense.get<std::string>() != "max" && sense.get<std::string>() != "min"))
    throw ParseError("schema error: 'sense' must be \"max\" or \"min\"");
  p.input_sense = sense.get<std::string>() == "max" ? Sense::max : Sense::min;

  const json& vars = require_field(doc, "variables", "problem");
  if (!vars.is_array())
    throw ParseError("schema error: 'variables' must be an array");
  for (const json& v : vars) {
    VariableDecl d;
    const json& name = require_field(v, "name", "variable");
    if (!name.is_string() || name.get<std::string>().empty())
      throw ParseError("schema error: variable 'name' must be a non-empty "
                       "string");
    d.name = name.get<std::string>();
    const json& kind = require_field(v, "kind", "variable");
    if (!kind.is_string())
      throw ParseError("schema error: variable 'kind' must be a string");
    d.kind = kind_from_string(kind.get<std::string>());
    p.variables.push_back(std::move(d));
  }

  const json& objective = require_field(doc, "objective", "problem");
  if (!objective.is_array())
    throw ParseError("schema error: 'objective' must be an array");
  for (const json& c : objective) p.objective.push_back(ivifn_from_json(c));
  if (p.objective.size() != p.variables.size())
    throw DimensionMismatch("objective has " +
                            std::to_string(p.objective.size()) +
                            " coefficients for " +
                            std::to_string(p.variables.size()) + " variables");

  const json& constraints = require_field(doc, "constraints", "problem");
  if (!constraints.is_array())
    throw ParseError("schema error: 'constraints' must be an array");
  for (const json& c : constraints) {
    Constraint row;
    const json& coeffs = require_field(c, "coeffs", "constraint");
    if (!coeffs.is_array())
      throw ParseError("schema error: constraint 'coeffs' must be an array");
    for (const json& v : coeffs) row.coeffs.push_back(ivifn_from_json(v));
    if (row.coeffs.size() != p.variables.size())
      throw DimensionMismatch(
          "constraint " + std::to_string(p.constraints.size()) + " has " +
          std::to_string(row.coeffs.size()) + " coefficients for " +
          std::to_string(p.variables.size()) + " variables");
    const json& rel = require_field(c, "relation", "constraint");
    if (!rel.is_string())
      throw ParseError("schema error: constraint 'relation' must be a string");
    row.relation = relation_from_string(rel.get<std::string>());
    row.rhs = ivifn_from_json(require_field(c, "rhs", "constraint"));
    p.constraints.push_back(std::move(row));
  }

  if (auto it = doc.find("solver"); it != doc.end()) {
    const json& s = *it;
    if (!s.is_object())
      throw ParseError("schema error: 'solver' must be an object");
    if (s.contains("k")) p.params.k = number_field(s, "k", "solver");
    if (s.contains("K")) p.params.K = number_field(s, "K", "solver");
    if (s.contains("lp_tol"))
      p.params.lp_tol = number_field(s, "lp_tol", "solver");
    if (s.contains("lex_slack"))
      p.params.lex_slack = number_field(s, "lex_slack", "solver");
    if (s.contains("branch_cap"))
      p.params.branch_cap =
          static_cast<long>(number_field(s, "branch_cap", "solver"));
    if (auto m = s.find("mode"); m != s.end()) {
      if (!m->is_string())
        throw ParseError("schema error: solver 'mode' must be a string");
      const std::string mode = m->get<std::string>();
      if (mode == "resolved")
        p.params.mode = LexMode::resolved;
      else if (mode == "bigM")
        p.params.mode = LexMode::bigM;
      else
        throw ParseError("schema error: solver 'mode' must be \"resolved\" "
                         "or \"bigM\"");
    }
    if (auto m = s.find("perm"); m != s.end()) {
      if (!m->is_string())
        throw ParseError("schema error: solver 'perm' must be a string");
      p.params.perm = parse_permutation(m->get<std::string>());
    }
  }

  // Normalize to max-sense; serialization undoes this.
  if (p.input_sense == Sense::min)
    for (Ivifn& c : p.objective) c = scalar_mul(-1.0, c);

  return p;
}

std::string serialize(const Problem& p) {
  json doc;
  doc["sense"] = p.input_sense == Sense::max ? "max" : "min";
  json vars = json::array();
  for (const VariableDecl& v : p.variables)
    vars.push_back(json{{"name", v.name}, {"kind", to_string(v.kind)}});
  doc["variables"] = vars;
  json objective = json::array();
  for (const Ivifn& c : p.objective)
    objective.push_back(ivifn_to_json(
        p.input_sense == Sense::min ? scalar_mul(-1.0, c) : c));
  doc["objective"] = objective;
  json constraints = json::array();
  for (const Constraint& c : p.constraints) {
    json coeffs = json::array();
    for (const Ivifn& v : c.coeffs) coeffs.push_back(ivifn_to_json(v));
    constraints.push_back(json{{"coeffs", coeffs},
                               {"relation", to_string(c.relation)},
                               {"rhs", ivifn_to_json(c.rhs)}});
  }
  doc["constraints"] = constraints;
  doc["solver"] =
      json{{"k", p.params.k},
           {"K", p.params.K},
           {"lp_tol", p.params.lp_tol},
           {"lex_slack", p.params.lex_slack},
           {"mode", p.params.mode == LexMode::resolved ? "resolved" : "bigM"},
           {"branch_cap", p.params.branch_cap},
           {"perm", permutation_to_string(p.params.perm)}};
  return doc.dump(2);
}

std::vector<std::string> validate_problem(const Problem& p) {
  std::vector<std::string> diags;
  std::set<std::string> names;
  for (const VariableDecl& v : p.variables) {
    if (v.name.empty()) diags.push_back("variable with empty name");
    if (!names.insert(v.name).second)
      diags.push_back("duplicate variable name '" + v.name + "'");
  }
  if (p.objective.size() != p.variables.size())
    diags.push_back("objective length does not match variable count");
  for (size_t i = 0; i < p.constraints.size(); ++i) {
    if (p.constraints[i].coeffs.size() != p.variables.size())
      diags.push_back("constraint " + std::to_string(i) +
                      " coefficient length does not match variable count");
  }

  // Every number must be valid and all must share one shape family.
  const Ivifn* reference = nullptr;
  auto check_number = [&](const Ivifn& x, const std::string& where) {
    try {
      validate(x);
    } catch (const ValidationError& e) {
      diags.push_back("invalid number in " + where + ": " + e.what());
      return;
    }
    if (!reference) {
      reference = &x;
      return;
    }
    try {
      require_same_shapes(*reference, x);
    } catch (const ShapeMismatch& e) {
      diags.push_back("ShapeMixing in " + where + ": " + e.what());
    }
  };
  for (size_t j = 0; j < p.objective.size(); ++j)
    check_number(p.objective[j], "objective coefficient " + std::to_string(j));
  for (size_t i = 0; i < p.constraints.size(); ++i) {
    for (size_t j = 0; j < p.constraints[i].coeffs.size(); ++j)
      check_number(p.constraints[i].coeffs[j],
                   "constraint " + std::to_string(i) + " coefficient " +
                       std::to_string(j));
    check_number(p.constraints[i].rhs,
                 "constraint " + std::to_string(i) + " rhs");
  }

  if (!(p.params.k > 0.0)) diags.push_back("solver parameter k must be > 0");
  if (!(p.params.K > 0.0)) diags.push_back("solver parameter K must be > 0");
  if (!(p.params.k < p.params.K))
    diags.push_back("solver parameters must satisfy k < K");
  if (!(p.params.lp_tol > 0.0))
    diags.push_back("solver parameter lp_tol must be > 0");
  if (p.params.lex_slack < 0.0)
    diags.push_back("solver parameter lex_slack must be >= 0");
  if (p.params.branch_cap <= 0)
    diags.push_back("solver parameter branch_cap must be > 0");
  return diags;
}

Solution solution_from_json(const Problem& p, const json& j) {
  Solution s;
  const json& vars = require_field(j, "variables", "solution");
  if (!vars.is_array() || vars.size() != p.variables.size())
    throw DimensionMismatch("solution variable count does not match problem");
  for (size_t i = 0; i < vars.size(); ++i)
    s.variable_values.push_back(
        ivifn_from_json(require_field(vars[i], "value", "solution variable")));
  s.objective = ivifn_from_json(require_field(j, "objective", "solution"));
  const json& opt = require_field(j, "stage_optima", "solution");
  if (!opt.is_array() || opt.size() != 7)
    throw ParseError("schema error: 'stage_optima' must have 7 entries");
  for (int t = 0; t < 7; ++t) s.stage_optima[t] = opt[t].get<double>();
  const json& stats = require_field(j, "branch_stats", "solution");
  s.branch_stats.explored =
      static_cast<long>(number_field(stats, "explored", "branch_stats"));
  s.branch_stats.feasible =
      static_cast<long>(number_field(stats, "feasible", "branch_stats"));
  s.branch_stats.ties =
      static_cast<long>(number_field(stats, "ties", "branch_stats"));
  return s;
}

json solution_to_json(const Problem& p, const Solution& s) {
  json vars = json::array();
  for (size_t i = 0; i < s.variable_values.size(); ++i)
    vars.push_back(json{{"name", p.variables[i].name},
                        {"value", ivifn_to_json(s.variable_values[i])}});
  return json{{"variables", vars},
              {"objective", ivifn_to_json(s.objective)},
              {"stage_optima", s.stage_optima},
              {"branch_stats",
               json{{"explored", s.branch_stats.explored},
                    {"feasible", s.branch_stats.feasible},
                    {"ties", s.branch_stats.ties}}}};
}

}  // namespace ivif
