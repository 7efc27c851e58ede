#pragma once

#include <vector>

#include "ivif/errors.hpp"

namespace ivif {

enum class Rel { le, eq, ge };

struct LpRow {
  std::vector<double> coeff;  // one entry per structural unknown
  Rel rel = Rel::le;
  double rhs = 0.0;
};

enum class LpStatus { optimal, infeasible, unbounded };

/// Maximize objective·x + objective_constant subject to rows. Unknowns are
/// free unless flagged in `nonneg` (empty vector = all free); callers that
/// need non-negativity can use either the flags or explicit rows.
struct LpInstance {
  int num_vars = 0;
  std::vector<double> objective;
  double objective_constant = 0.0;
  std::vector<LpRow> rows;
  std::vector<bool> nonneg;
};

struct LpOutcome {
  LpStatus status = LpStatus::optimal;
  double value = 0.0;              // includes objective_constant
  std::vector<double> assignment;  // structural unknowns; empty unless optimal
};

/// Dense two-phase primal simplex. Free unknowns are handled natively: a
/// nonbasic free column may enter in either direction and free basics never
/// limit the ratio test. Dantzig pricing with a switch to Bland's rule after
/// a degeneracy streak; throws NumericalBreakdown when acceptable pivots
/// (magnitude > lp_tol/1000) cannot be found repeatedly.
LpOutcome solve_lp(const LpInstance& inst, double lp_tol = 1e-9);

}  // namespace ivif
