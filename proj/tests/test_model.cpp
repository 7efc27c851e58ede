#include <doctest.h>

#include <json.hpp>

#include "ivif/json_io.hpp"
#include "ivif/model.hpp"
#include "instances.hpp"

using namespace ivif;

namespace {

bool problems_equal(const Problem& a, const Problem& b) {
  if (a.input_sense != b.input_sense) return false;
  if (a.variables.size() != b.variables.size()) return false;
  for (size_t i = 0; i < a.variables.size(); ++i) {
    if (a.variables[i].name != b.variables[i].name) return false;
    if (a.variables[i].kind != b.variables[i].kind) return false;
  }
  if (a.objective.size() != b.objective.size()) return false;
  for (size_t i = 0; i < a.objective.size(); ++i)
    if (!ivifn_equal(a.objective[i], b.objective[i])) return false;
  if (a.constraints.size() != b.constraints.size()) return false;
  for (size_t i = 0; i < a.constraints.size(); ++i) {
    const Constraint& ca = a.constraints[i];
    const Constraint& cb = b.constraints[i];
    if (ca.relation != cb.relation) return false;
    if (!ivifn_equal(ca.rhs, cb.rhs)) return false;
    if (ca.coeffs.size() != cb.coeffs.size()) return false;
    for (size_t j = 0; j < ca.coeffs.size(); ++j)
      if (!ivifn_equal(ca.coeffs[j], cb.coeffs[j])) return false;
  }
  return a.params.k == b.params.k && a.params.K == b.params.K &&
         a.params.lp_tol == b.params.lp_tol &&
         a.params.lex_slack == b.params.lex_slack &&
         a.params.mode == b.params.mode &&
         a.params.branch_cap == b.params.branch_cap &&
         a.params.perm == b.params.perm;
}

}  // namespace

TEST_CASE("ivifn JSON round trip") {
  const Ivifn x(5, 2, 2, 3, 3, 5, 5, 5, 4);
  const nlohmann::json j = ivifn_to_json(x);
  CHECK(j.at("a") == 5.0);
  CHECK(j.at("shape") == "linear");
  CHECK(j.at("spreads").size() == 8);
  CHECK(j.at("spreads")[0] == 2.0);
  CHECK(j.at("spreads")[7] == 4.0);
  CHECK(ivifn_equal(ivifn_from_json(j), x));
  CHECK_THROWS_AS((void)ivifn_from_json(nlohmann::json{{"a", 1.0}}),
                  ParseError);
  nlohmann::json bad = j;
  bad["spreads"] = {1, 2, 3};
  CHECK_THROWS_AS((void)ivifn_from_json(bad), ParseError);
  nlohmann::json invalid = j;
  invalid["spreads"][0] = -1.0;  // violates spread non-negativity
  CHECK_THROWS_AS((void)ivifn_from_json(invalid), ValidationError);
}

TEST_CASE("parsing the demo document matches the built fixture") {
  const Problem parsed = parse(fixtures::demo_two_var_json());
  const Problem built = fixtures::demo_two_var();
  CHECK(problems_equal(parsed, built));
  CHECK(parsed.params.k == 1e-4);
  CHECK(parsed.params.K == 1000.0);
  CHECK(parsed.params.lp_tol == 1e-9);
  CHECK(parsed.params.lex_slack == 1e-6);
  CHECK(parsed.params.branch_cap == 1000000);
  CHECK(parsed.params.mode == LexMode::resolved);
  CHECK(parsed.params.perm == default_permutation());
}

TEST_CASE("serialize then parse is the identity") {
  const Problem p = fixtures::manufacturing();
  const Problem q = parse(serialize(p));
  CHECK(problems_equal(p, q));
  const Problem d = fixtures::demo_two_var();
  CHECK(problems_equal(d, parse(serialize(d))));
}

TEST_CASE("solver block overrides parameters") {
  nlohmann::json j = nlohmann::json::parse(fixtures::demo_two_var_json());
  j["solver"] = {{"k", 1e-3},       {"K", 500.0},          {"lp_tol", 1e-8},
                 {"lex_slack", 1e-5}, {"branch_cap", 4096}, {"mode", "bigM"},
                 {"perm", "MSACDGH"}};
  const Problem p = parse(j.dump());
  CHECK(p.params.k == 1e-3);
  CHECK(p.params.K == 500.0);
  CHECK(p.params.lp_tol == 1e-8);
  CHECK(p.params.lex_slack == 1e-5);
  CHECK(p.params.branch_cap == 4096);
  CHECK(p.params.mode == LexMode::bigM);
  CHECK(p.params.perm == parse_permutation("MSACDGH"));
  CHECK(problems_equal(p, parse(serialize(p))));

  j["solver"]["mode"] = "fancy";
  CHECK_THROWS_AS((void)parse(j.dump()), ParseError);
}

TEST_CASE("minimization is normalized to maximization") {
  nlohmann::json j = nlohmann::json::parse(fixtures::demo_two_var_json());
  j["sense"] = "min";
  const Problem p = parse(j.dump());
  CHECK(p.input_sense == Sense::min);
  const Problem maxp = fixtures::demo_two_var();
  // stored objective is the negated one
  CHECK(ivifn_equal(p.objective[0], scalar_mul(-1, maxp.objective[0])));
  CHECK(ivifn_equal(p.objective[1], scalar_mul(-1, maxp.objective[1])));
  // serialization restores the original document's coefficients
  const Problem q = parse(serialize(p));
  CHECK(q.input_sense == Sense::min);
  CHECK(ivifn_equal(q.objective[0], p.objective[0]));
}

TEST_CASE("schema violations raise ParseError") {
  CHECK_THROWS_AS((void)parse("not json"), ParseError);
  CHECK_THROWS_AS((void)parse("{}"), ParseError);
  nlohmann::json j = nlohmann::json::parse(fixtures::demo_two_var_json());
  nlohmann::json bad = j;
  bad["sense"] = "maximize";
  CHECK_THROWS_AS((void)parse(bad.dump()), ParseError);
  bad = j;
  bad["variables"][0]["kind"] = "interval";
  CHECK_THROWS_AS((void)parse(bad.dump()), ParseError);
  bad = j;
  bad["constraints"][0]["relation"] = "le";
  CHECK_THROWS_AS((void)parse(bad.dump()), ParseError);
  bad = j;
  bad["objective"].erase(1);  // one coefficient for two variables
  CHECK_THROWS_AS((void)parse(bad.dump()), DimensionMismatch);
  bad = j;
  bad["constraints"][0]["coeffs"].erase(1);
  CHECK_THROWS_AS((void)parse(bad.dump()), DimensionMismatch);
}

TEST_CASE("problem diagnostics") {
  CHECK(validate_problem(fixtures::demo_two_var()).empty());
  CHECK(validate_problem(fixtures::manufacturing()).empty());

  Problem dup = fixtures::demo_two_var();
  dup.variables[1].name = "x1";
  CHECK_FALSE(validate_problem(dup).empty());

  Problem badk = fixtures::demo_two_var();
  badk.params.k = -1.0;
  CHECK_FALSE(validate_problem(badk).empty());

  Problem mixed = fixtures::demo_two_var();
  auto quad = make_shape(
      "quad", [](double t) { return t < 1 ? 1 - t * t : 0.0; },
      [](double z) { return std::sqrt(1.0 - z); });
  mixed.objective[0].L = quad;
  CHECK_FALSE(validate_problem(mixed).empty());
}

TEST_CASE("solution JSON round trip") {
  const Problem p = fixtures::demo_two_var();
  Solution s;
  s.variable_values = {crisp(10), crisp(-5)};
  s.objective = fixtures::demo_objective_value();
  s.stage_optima = fixtures::demo_stage_optima();
  s.branch_stats.explored = 32;
  s.branch_stats.feasible = 1;
  s.branch_stats.ties = 0;
  const nlohmann::json j = solution_to_json(p, s);
  CHECK(j.at("variables").size() == 2);
  CHECK(j.at("variables")[0].at("name") == "x1");
  CHECK(j.at("stage_optima").size() == 7);
  CHECK(j.at("branch_stats").at("explored") == 32);
  const Solution t = solution_from_json(p, j);
  CHECK(ivifn_equal(t.objective, s.objective));
  CHECK(ivifn_equal(t.variable_values[0], s.variable_values[0]));
  CHECK(ivifn_equal(t.variable_values[1], s.variable_values[1]));
  for (int i = 0; i < 7; ++i)
    CHECK(t.stage_optima[i] == doctest::Approx(s.stage_optima[i]));
  CHECK(t.branch_stats.explored == 32);
  CHECK(t.branch_stats.feasible == 1);
  CHECK(t.branch_stats.ties == 0);
}
