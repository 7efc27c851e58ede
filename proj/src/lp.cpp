#include "ivif/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ivif {

namespace {

struct Tableau {
  int m = 0;     // active rows
  int cols = 0;  // columns excluding the rhs
  int n_struct = 0;
  std::vector<std::vector<double>> t;  // m x (cols+1), last entry = rhs
  std::vector<int> basis;              // basic column per row
  std::vector<bool> is_free;
  std::vector<bool> is_artificial;
  double pivot_floor = 1e-12;

  double& rhs(int i) { return t[i][cols]; }
};

// One simplex run on the current basis. `cost` has size cols; artificials
// are barred from entering when `bar_artificials` is set. Returns false on
// unboundedness.
bool run_simplex(Tableau& tab, const std::vector<double>& cost,
                 bool bar_artificials, double tol) {
  const int C = tab.cols;
  // Reduced-cost row, eliminating the basic columns.
  std::vector<double> d(cost);
  double z = 0.0;
  for (int r = 0; r < tab.m; ++r) {
    const int jb = tab.basis[r];
    const double cb = d[jb];
    if (cb == 0.0) continue;
    for (int q = 0; q <= C; ++q) {
      if (q < C)
        d[q] -= cb * tab.t[r][q];
    }
    z += cb * tab.rhs(r);
    d[jb] = 0.0;  // exact
  }

  std::vector<bool> in_basis(C, false);
  for (int r = 0; r < tab.m; ++r) in_basis[tab.basis[r]] = true;

  bool bland = false;
  int stall = 0;
  int rejected = 0;
  const long max_iter = 2000 + 200L * (tab.m + C);
  for (long iter = 0; iter < max_iter; ++iter) {
    // Entering column: restricted columns need d > tol, free columns any
    // |d| > tol (they can move both ways).
    int enter = -1;
    int dir = +1;
    double best = tol;
    for (int j = 0; j < C; ++j) {
      if (in_basis[j]) continue;
      if (bar_artificials && tab.is_artificial[j]) continue;
      double gain;
      int jdir;
      if (tab.is_free[j]) {
        gain = std::abs(d[j]);
        jdir = d[j] > 0.0 ? +1 : -1;
      } else {
        gain = d[j];
        jdir = +1;
      }
      if (gain <= best) continue;
      enter = j;
      dir = jdir;
      if (bland) break;  // first eligible by index
      best = gain;
    }
    if (enter < 0) return true;  // optimal for this phase

    // Ratio test: only restricted basics block (free basics may go
    // negative). delta > 0 means the basic value falls as the entering
    // variable moves by t in direction `dir`.
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < tab.m; ++r) {
      if (tab.is_free[tab.basis[r]]) continue;
      const double delta = dir * tab.t[r][enter];
      if (delta <= tab.pivot_floor) continue;
      const double ratio = tab.rhs(r) / delta;
      if (ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 &&
           (leave < 0 || tab.basis[r] < tab.basis[leave]))) {
        best_ratio = ratio;
        leave = r;
      }
    }
    if (leave < 0) return false;  // unbounded in this direction

    const double pivot = tab.t[leave][enter];
    if (std::abs(pivot) <= tab.pivot_floor) {
      if (++rejected > 50)
        throw NumericalBreakdown("simplex pivots below tolerance floor");
      continue;
    }
    rejected = 0;

    // Pivot: normalize the leaving row, eliminate the column elsewhere and
    // from the reduced costs.
    std::vector<double>& prow = tab.t[leave];
    const double inv = 1.0 / pivot;
    for (int q = 0; q <= C; ++q) prow[q] *= inv;
    prow[enter] = 1.0;
    for (int r = 0; r < tab.m; ++r) {
      if (r == leave) continue;
      const double f = tab.t[r][enter];
      if (f == 0.0) continue;
      std::vector<double>& row = tab.t[r];
      for (int q = 0; q <= C; ++q) row[q] -= f * prow[q];
      row[enter] = 0.0;
    }
    const double de = d[enter];
    const double dz = de * prow[C];
    if (de != 0.0) {
      for (int q = 0; q < C; ++q) d[q] -= de * prow[q];
      d[enter] = 0.0;
    }
    in_basis[tab.basis[leave]] = false;
    in_basis[enter] = true;
    tab.basis[leave] = enter;

    z += dz;
    if (std::abs(dz) <= 1e-13 * (1.0 + std::abs(z))) {
      if (++stall > 50) bland = true;
    } else {
      stall = 0;
      bland = false;
    }
  }
  throw NumericalBreakdown("simplex iteration limit exceeded");
}

}  // namespace

LpOutcome solve_lp(const LpInstance& inst, double lp_tol) {
  const int n = inst.num_vars;
  if (static_cast<int>(inst.objective.size()) != n)
    throw ValidationError("lp: objective length does not match num_vars");
  for (const LpRow& row : inst.rows)
    if (static_cast<int>(row.coeff.size()) != n)
      throw ValidationError("lp: row length does not match num_vars");
  if (!inst.nonneg.empty() && static_cast<int>(inst.nonneg.size()) != n)
    throw ValidationError("lp: nonneg flags length does not match num_vars");

  const int m = static_cast<int>(inst.rows.size());
  const int n_slack =
      static_cast<int>(std::count_if(inst.rows.begin(), inst.rows.end(),
                                     [](const LpRow& r) { return r.rel != Rel::eq; }));

  // Assemble equality-form rows with rhs >= 0; slacks first, artificials
  // appended only where no identity column falls out.
  Tableau tab;
  tab.n_struct = n;
  tab.m = m;
  tab.pivot_floor = std::max(1e-13, lp_tol * 1e-3);
  int cols = n + n_slack;
  tab.t.assign(m, {});
  tab.basis.assign(m, -1);
  std::vector<int> slack_col(m, -1);
  {
    int s = 0;
    for (int i = 0; i < m; ++i)
      if (inst.rows[i].rel != Rel::eq) slack_col[i] = n + s++;
  }
  std::vector<int> art_rows;
  for (int i = 0; i < m; ++i) {
    const LpRow& row = inst.rows[i];
    std::vector<double> r(cols + 1, 0.0);
    for (int j = 0; j < n; ++j) r[j] = row.coeff[j];
    double slack_sign = 0.0;
    if (row.rel == Rel::le) slack_sign = 1.0;
    if (row.rel == Rel::ge) slack_sign = -1.0;
    double b = row.rhs;
    double flip = 1.0;
    if (b < 0.0) {
      flip = -1.0;
      b = -b;
      for (int j = 0; j < n; ++j) r[j] = -r[j];
    }
    if (slack_col[i] >= 0) r[slack_col[i]] = flip * slack_sign;
    // rhs is stored at the artificial-extended width later; stash for now.
    r.back() = b;
    if (slack_col[i] >= 0 && r[slack_col[i]] > 0.5)
      tab.basis[i] = slack_col[i];
    else
      art_rows.push_back(i);
    tab.t[i] = std::move(r);
  }

  const int n_art = static_cast<int>(art_rows.size());
  tab.cols = cols + n_art;
  for (int i = 0; i < m; ++i) {
    const double b = tab.t[i].back();
    tab.t[i].back() = 0.0;
    tab.t[i].resize(tab.cols + 1, 0.0);
    tab.t[i][tab.cols] = b;
  }
  for (int a = 0; a < n_art; ++a) {
    tab.t[art_rows[a]][cols + a] = 1.0;
    tab.basis[art_rows[a]] = cols + a;
  }

  tab.is_free.assign(tab.cols, false);
  tab.is_artificial.assign(tab.cols, false);
  for (int j = 0; j < n; ++j)
    tab.is_free[j] = inst.nonneg.empty() ? true : !inst.nonneg[j];
  for (int j = cols; j < tab.cols; ++j) tab.is_artificial[j] = true;

  double bmax = 0.0;
  for (int i = 0; i < m; ++i) bmax = std::max(bmax, std::abs(tab.rhs(i)));
  const double feas_tol = lp_tol * (1.0 + bmax);

  LpOutcome out;

  if (n_art > 0) {
    std::vector<double> phase1(tab.cols, 0.0);
    for (int j = cols; j < tab.cols; ++j) phase1[j] = -1.0;
    if (!run_simplex(tab, phase1, false, feas_tol))
      throw NumericalBreakdown("phase-1 objective reported unbounded");
    double art_sum = 0.0;
    for (int r = 0; r < tab.m; ++r)
      if (tab.is_artificial[tab.basis[r]]) art_sum += std::abs(tab.rhs(r));
    if (art_sum > feas_tol) {
      out.status = LpStatus::infeasible;
      return out;
    }
    // Drive leftover zero-level artificials out of the basis; rows that
    // offer no pivot are redundant and get dropped.
    for (int r = tab.m - 1; r >= 0; --r) {
      if (!tab.is_artificial[tab.basis[r]]) continue;
      int piv = -1;
      for (int j = 0; j < cols; ++j) {
        if (std::abs(tab.t[r][j]) > 1e-9) {
          piv = j;
          break;
        }
      }
      if (piv < 0) {
        tab.t.erase(tab.t.begin() + r);
        tab.basis.erase(tab.basis.begin() + r);
        tab.m--;
        continue;
      }
      const double pivot = tab.t[r][piv];
      std::vector<double>& prow = tab.t[r];
      for (int q = 0; q <= tab.cols; ++q) prow[q] /= pivot;
      for (int i = 0; i < tab.m; ++i) {
        if (i == r) continue;
        const double f = tab.t[i][piv];
        if (f == 0.0) continue;
        for (int q = 0; q <= tab.cols; ++q) tab.t[i][q] -= f * prow[q];
      }
      tab.basis[r] = piv;
    }
  }

  std::vector<double> phase2(tab.cols, 0.0);
  for (int j = 0; j < n; ++j) phase2[j] = inst.objective[j];
  double cmax = 0.0;
  for (int j = 0; j < n; ++j) cmax = std::max(cmax, std::abs(phase2[j]));
  if (!run_simplex(tab, phase2, true, lp_tol * (1.0 + cmax))) {
    out.status = LpStatus::unbounded;
    return out;
  }

  out.status = LpStatus::optimal;
  out.assignment.assign(n, 0.0);
  for (int r = 0; r < tab.m; ++r)
    if (tab.basis[r] < n) out.assignment[tab.basis[r]] = tab.rhs(r);
  out.value = inst.objective_constant;
  for (int j = 0; j < n; ++j)
    out.value += inst.objective[j] * out.assignment[j];
  return out;
}

}  // namespace ivif
