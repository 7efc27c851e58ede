#pragma once

#include <array>
#include <string>
#include <vector>

#include "ivif/ivifn.hpp"
#include "ivif/ranking.hpp"

namespace ivif {

enum class Sense { max, min };

enum class VarKind {
  crisp_nonneg,
  crisp_unrestricted,
  ivifn_nonneg,
  ivifn_unrestricted,
};

enum class Relation { eq, leq, geq };

struct VariableDecl {
  std::string name;
  VarKind kind = VarKind::crisp_nonneg;
};

struct Constraint {
  std::vector<Ivifn> coeffs;  // one per declared variable, crisp zero allowed
  Relation relation = Relation::eq;
  Ivifn rhs;
};

/// How fuzzy-order inequality constraints are encoded per branch: `resolved`
/// substitutes the branch's chain pattern directly (no binaries, no big
/// constants); `bigM` keeps the full indicator-row encoding with the binary
/// vector fixed to the pattern. Both define the same feasible set.
enum class LexMode { resolved, bigM };

struct SolverParams {
  double k = 1e-4;        // strictness margin of the lexicographic step
  double K = 1000.0;      // big-M constant (bigM mode only)
  double lp_tol = 1e-9;   // simplex feasibility/pivot tolerance
  double lex_slack = 1e-6;  // headroom when carrying stage optima forward
  LexMode mode = LexMode::resolved;
  long branch_cap = 1000000;  // enumeration safety cap
  KeyPermutation perm = default_permutation();  // stage/comparison order
};

struct Problem {
  Sense input_sense = Sense::max;  // sense as written in the source document
  // Objective is kept max-sense: coefficients of a min input are negated at
  // load time (and negated back on serialization).
  std::vector<Ivifn> objective;
  std::vector<VariableDecl> variables;
  std::vector<Constraint> constraints;
  SolverParams params;
};

struct BranchStats {
  long explored = 0;  // branches enumerated
  long feasible = 0;  // branches feasible at stage 1
  long ties = 0;  // further branches matching the winner on all seven stages
};

struct Solution {
  std::vector<Ivifn> variable_values;  // parallel to Problem.variables
  // Objective in the caller's sense (negated back for min inputs), always
  // recomputed from the variable values with the original coefficients.
  Ivifn objective;
  // Optima of the seven staged LPs, in stage order. These describe the
  // internal max-sense objective; for max inputs they equal
  // lex_key(objective) reordered by the key permutation.
  std::array<double, 7> stage_optima{};
  BranchStats branch_stats;
};

/// Parses a problem document. Throws ParseError on malformed JSON or schema
/// violations, DimensionMismatch on length disagreements, and propagates
/// number-validation errors. Min-sense input is normalized (see Problem).
Problem parse(const std::string& json_text);

/// Inverse of parse: emits a document that parses back field-by-field equal.
std::string serialize(const Problem& p);

/// Solvability diagnostics beyond schema checks: mixed shapes, bad solver
/// parameters, duplicate names. Empty list means the solver accepts it.
std::vector<std::string> validate_problem(const Problem& p);

std::string to_string(VarKind k);
std::string to_string(Relation r);

}  // namespace ivif
