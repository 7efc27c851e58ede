#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ivif/transform.hpp"

namespace ivif {

/// Branch-sweep execution policy. The sweep runs the branches of a stage
/// concurrently when built with OpenMP; `parallel = false` forces the serial
/// reference path (same results, fixed iteration order).
struct ExecPolicy {
  bool parallel = true;
  int max_threads = 0;  // 0 = runtime default
};

/// Per-stage summary of the sweep.
struct StageTrace {
  int stage = 0;         // 1..7, key-permutation order
  double optimum = 0.0;  // best value over feasible branches
  long winner = -1;      // smallest branch id within lex_slack of optimum
  long feasible = 0;     // branches feasible at this stage
};

/// Mixed-radix view of the enumeration without materializing it. Digits are,
/// most significant first: one sign (radix 2) per crisp-unrestricted
/// variable, one class (radix 10) per fuzzy-unrestricted variable, one chain
/// pattern (radix 8) per inequality constraint, each group in declaration
/// order. Branch ids are the mixed-radix values, so id 0 picks all
/// non-negative signs, class 1 everywhere, and pattern 0.
struct BranchSpace {
  long count = 1;
  std::vector<int> radix;
  std::vector<int> kind;    // 0 = sign, 1 = class, 2 = pattern digit
  std::vector<int> target;  // variable or constraint index of the digit
  std::size_t num_variables = 0;
  std::size_t num_constraints = 0;

  Branch decode(long id) const;
};

/// Throws BranchBudgetExceeded when the count would pass params.branch_cap.
BranchSpace branch_space(const Problem& p);

/// Materialized enumeration in id order (small spaces and tests).
std::vector<Branch> enumerate_branches(const Problem& p);

struct BranchOutcome {
  long id = -1;
  LpStatus status = LpStatus::infeasible;
  double value = 0.0;
  std::vector<double> point;  // component assignment when optimal
};

/// Solves stage `stage` of every given branch under the carried optima of
/// earlier stages. Returns the stage optimum and one outcome per branch.
/// Throws AllBranchesInfeasible when no branch is feasible and
/// Unbounded(stage) when any branch's stage LP is unbounded.
std::pair<double, std::vector<BranchOutcome>> solve_stage(
    const Problem& p, const ComponentSpace& space,
    const std::vector<Branch>& branches, int stage,
    const std::vector<double>& carried_optima, const ExecPolicy& policy = {});

/// Runs the full seven-stage lexicographic sweep and reconstructs the fuzzy
/// solution from the winning branch. Throws Infeasible, Unbounded,
/// BranchBudgetExceeded, or ValidationError on an invalid problem.
Solution solve(const Problem& p, const ExecPolicy& policy = {});

/// Same, filling a per-stage trace.
Solution solve_traced(const Problem& p, std::vector<StageTrace>& trace,
                      const ExecPolicy& policy = {});

/// Rebuilds each variable's fuzzy value from a component assignment: spreads
/// clamped to zero and re-nested where the LP tolerance let them dip, shapes
/// taken from the problem's numbers.
std::vector<Ivifn> values_from_point(const Problem& p,
                                     const ComponentSpace& space,
                                     const std::vector<double>& point);

/// The objective's fuzzy value at the given variable values, in the
/// internal maximization sense.
Ivifn objective_value(const Problem& p, const std::vector<Ivifn>& values);

struct CertifyReport {
  long samples = 0;     // vertex draws attempted
  long feasible = 0;    // draws that produced a feasible vertex
  long violations = 0;  // feasible candidates ranking above the solution
  std::vector<std::string> notes;
  bool ok = true;
};

/// Optimality spot-check: samples random vertices across branches (random
/// objective directions over the branch polyhedra) and verifies none ranks
/// strictly above the solution.
CertifyReport certify(const Problem& p, const Solution& s, long samples);

}  // namespace ivif
