#include "ivif/solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#ifdef IVIF_HAVE_OPENMP
#include <omp.h>
#endif

namespace ivif {

namespace {

BranchOutcome solve_one(const Problem& p, const ComponentSpace& space,
                        const Branch& b, int stage,
                        const std::vector<double>& optima) {
  BranchOutcome oc;
  oc.id = b.id;
  const StagedLp staged = build_branch_lp(p, space, b, stage, optima);
  const LpOutcome lp = solve_lp(to_instance(staged, space), p.params.lp_tol);
  oc.status = lp.status;
  oc.value = lp.value;
  if (lp.status == LpStatus::optimal) oc.point = lp.assignment;
  return oc;
}

void sweep(const Problem& p, const ComponentSpace& space,
           const std::function<Branch(long)>& branch_at, long n, int stage,
           const std::vector<double>& optima, const ExecPolicy& policy,
           std::vector<BranchOutcome>& out) {
  out.assign(static_cast<std::size_t>(n), BranchOutcome{});
#ifdef IVIF_HAVE_OPENMP
  if (policy.parallel && n > 1) {
    const int nt =
        policy.max_threads > 0 ? policy.max_threads : omp_get_max_threads();
    std::exception_ptr eptr = nullptr;
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (long i = 0; i < n; ++i) {
      try {
        out[i] = solve_one(p, space, branch_at(i), stage, optima);
      } catch (...) {
#pragma omp critical
        {
          if (!eptr) eptr = std::current_exception();
        }
      }
    }
    if (eptr) std::rethrow_exception(eptr);
    return;
  }
#else
  (void)policy;
#endif
  for (long i = 0; i < n; ++i)
    out[i] = solve_one(p, space, branch_at(i), stage, optima);
}

// Stage bookkeeping shared by solve_stage and the full pipeline: the stage
// optimum plus the throw-on-unbounded / throw-on-empty rules.
double analyze_stage(const std::vector<BranchOutcome>& outcomes, int stage) {
  double opt = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (const BranchOutcome& oc : outcomes) {
    if (oc.status == LpStatus::unbounded) {
      std::ostringstream msg;
      msg << "stage " << stage << " is unbounded (branch " << oc.id << ")";
      throw Unbounded(stage, msg.str());
    }
    if (oc.status == LpStatus::optimal) {
      any = true;
      opt = std::max(opt, oc.value);
    }
  }
  if (!any) {
    std::ostringstream msg;
    if (stage == 1)
      msg << "every branch fails its stage-1 program";
    else
      msg << "all branches became infeasible at stage " << stage;
    throw AllBranchesInfeasible(stage, msg.str());
  }
  return opt;
}

}  // namespace

Branch BranchSpace::decode(long id) const {
  Branch b;
  b.id = id;
  b.sign.assign(num_variables, +1);
  b.cls.assign(num_variables, 1);
  b.pattern.assign(num_constraints, -1);
  std::vector<int> digit(radix.size(), 0);
  for (int i = static_cast<int>(radix.size()) - 1; i >= 0; --i) {
    digit[i] = static_cast<int>(id % radix[i]);
    id /= radix[i];
  }
  for (std::size_t i = 0; i < radix.size(); ++i) {
    switch (kind[i]) {
      case 0: b.sign[target[i]] = digit[i] == 0 ? +1 : -1; break;
      case 1: b.cls[target[i]] = digit[i] + 1; break;
      default: b.pattern[target[i]] = digit[i]; break;
    }
  }
  // Inequality constraints always carry a pattern digit; equalities keep -1.
  return b;
}

BranchSpace branch_space(const Problem& p) {
  BranchSpace bs;
  bs.num_variables = p.variables.size();
  bs.num_constraints = p.constraints.size();
  auto push = [&](int radix, int kind, int target) {
    if (bs.count > p.params.branch_cap / radix) {
      std::ostringstream msg;
      msg << "branch enumeration exceeds the cap of " << p.params.branch_cap;
      throw BranchBudgetExceeded(msg.str());
    }
    bs.count *= radix;
    bs.radix.push_back(radix);
    bs.kind.push_back(kind);
    bs.target.push_back(target);
  };
  for (std::size_t v = 0; v < p.variables.size(); ++v)
    if (p.variables[v].kind == VarKind::crisp_unrestricted)
      push(2, 0, static_cast<int>(v));
  for (std::size_t v = 0; v < p.variables.size(); ++v)
    if (p.variables[v].kind == VarKind::ivifn_unrestricted)
      push(10, 1, static_cast<int>(v));
  for (std::size_t c = 0; c < p.constraints.size(); ++c)
    if (p.constraints[c].relation != Relation::eq)
      push(8, 2, static_cast<int>(c));
  return bs;
}

std::vector<Branch> enumerate_branches(const Problem& p) {
  const BranchSpace bs = branch_space(p);
  std::vector<Branch> out;
  out.reserve(static_cast<std::size_t>(bs.count));
  for (long id = 0; id < bs.count; ++id) out.push_back(bs.decode(id));
  return out;
}

std::pair<double, std::vector<BranchOutcome>> solve_stage(
    const Problem& p, const ComponentSpace& space,
    const std::vector<Branch>& branches, int stage,
    const std::vector<double>& carried_optima, const ExecPolicy& policy) {
  std::vector<BranchOutcome> outcomes;
  sweep(
      p, space, [&](long i) { return branches[static_cast<std::size_t>(i)]; },
      static_cast<long>(branches.size()), stage, carried_optima, policy,
      outcomes);
  const double opt = analyze_stage(outcomes, stage);
  return {opt, std::move(outcomes)};
}

std::vector<Ivifn> values_from_point(const Problem& p,
                                     const ComponentSpace& space,
                                     const std::vector<double>& point) {
  const Ivifn& ref = reference_number(p);
  std::vector<Ivifn> values;
  values.reserve(p.variables.size());
  for (std::size_t v = 0; v < p.variables.size(); ++v) {
    Ivifn x;
    if (space.width[v] == 1) {
      x.a = point[space.unknown(static_cast<int>(v), 0)];
    } else {
      const int u = space.first[v];
      x.a = point[u];
      // Clamp LP-tolerance dips below zero and re-nest the supports; exact
      // assignments pass through unchanged.
      const double mu_l = std::max(0.0, point[u + 1]);
      const double mu_r = std::max(0.0, point[u + 2]);
      const double mup_l = std::max(mu_l, std::max(0.0, point[u + 3]));
      const double mup_r = std::max(mu_r, std::max(0.0, point[u + 4]));
      const double nup_l = std::max(mup_l, std::max(0.0, point[u + 7]));
      const double nup_r = std::max(mup_r, std::max(0.0, point[u + 8]));
      x.mu_l = mu_l;
      x.mu_r = mu_r;
      x.mup_l = mup_l;
      x.mup_r = mup_r;
      x.nup_l = nup_l;
      x.nup_r = nup_r;
      x.nu_l = std::max(nup_l, std::max(0.0, point[u + 5]));
      x.nu_r = std::max(nup_r, std::max(0.0, point[u + 6]));
    }
    x.L = ref.L;
    x.R = ref.R;
    x.Lp = ref.Lp;
    x.Rp = ref.Rp;
    values.push_back(x);
  }
  return values;
}

Ivifn objective_value(const Problem& p, const std::vector<Ivifn>& values) {
  Ivifn sum = crisp(0.0);
  const Ivifn& ref = reference_number(p);
  sum.L = ref.L;
  sum.R = ref.R;
  sum.Lp = ref.Lp;
  sum.Rp = ref.Rp;
  for (std::size_t j = 0; j < p.objective.size(); ++j)
    sum = add(sum, mul(p.objective[j], values[j]));
  return sum;
}

Solution solve_traced(const Problem& p, std::vector<StageTrace>& trace,
                      const ExecPolicy& policy) {
  const std::vector<std::string> issues = validate_problem(p);
  if (!issues.empty())
    throw ValidationError("invalid problem: " + issues.front());

  const ComponentSpace space = component_space(p);
  const BranchSpace bs = branch_space(p);

  trace.clear();
  Solution sol;
  sol.branch_stats.explored = bs.count;

  std::vector<long> live(static_cast<std::size_t>(bs.count));
  std::iota(live.begin(), live.end(), 0L);

  std::vector<double> optima;
  std::vector<BranchOutcome> outcomes;
  for (int stage = 1; stage <= 7; ++stage) {
    sweep(
        p, space,
        [&](long i) { return bs.decode(live[static_cast<std::size_t>(i)]); },
        static_cast<long>(live.size()), stage, optima, policy, outcomes);
    const double opt = analyze_stage(outcomes, stage);

    StageTrace st;
    st.stage = stage;
    st.optimum = opt;
    std::vector<long> next;
    std::vector<BranchOutcome> kept;
    for (const BranchOutcome& oc : outcomes) {
      if (oc.status != LpStatus::optimal) continue;
      st.feasible++;
      if (oc.value < opt - p.params.lex_slack) continue;
      if (st.winner < 0) st.winner = oc.id;
      next.push_back(oc.id);
      kept.push_back(oc);
    }
    if (stage == 1) sol.branch_stats.feasible = st.feasible;
    trace.push_back(st);
    optima.push_back(opt);
    live = std::move(next);
    outcomes = std::move(kept);
  }

  for (int s = 0; s < 7; ++s) sol.stage_optima[s] = optima[s];
  sol.branch_stats.ties = static_cast<long>(live.size()) - 1;

  const BranchOutcome& winner = outcomes.front();  // smallest id survives first
  sol.variable_values = values_from_point(p, space, winner.point);
  const Ivifn internal = objective_value(p, sol.variable_values);
  sol.objective =
      p.input_sense == Sense::min ? scalar_mul(-1.0, internal) : internal;
  return sol;
}

Solution solve(const Problem& p, const ExecPolicy& policy) {
  std::vector<StageTrace> trace;
  return solve_traced(p, trace, policy);
}

CertifyReport certify(const Problem& p, const Solution& s, long samples) {
  const ComponentSpace space = component_space(p);
  const BranchSpace bs = branch_space(p);
  const Ivifn solution_objective = objective_value(p, s.variable_values);
  // Key components may legitimately drift by the carried-stage headroom.
  const double tol = 10.0 * p.params.lex_slack;

  CertifyReport report;
  report.samples = samples;
  std::mt19937_64 rng(0x1f1f5eed);
  std::uniform_int_distribution<long> pick(0, bs.count - 1);
  std::uniform_real_distribution<double> dir(-1.0, 1.0);

  for (long i = 0; i < samples; ++i) {
    const Branch b = bs.decode(pick(rng));
    LpInstance inst;
    inst.num_vars = space.total;
    inst.objective.resize(space.total);
    for (double& c : inst.objective) c = dir(rng);
    try {
      for (const TaggedRow& row : branch_rows(p, space, b))
        inst.rows.push_back(row.row);
      const LpOutcome lp = solve_lp(inst, p.params.lp_tol);
      if (lp.status != LpStatus::optimal) continue;
      report.feasible++;
      const std::vector<Ivifn> vals =
          values_from_point(p, space, lp.assignment);
      const Ivifn candidate = objective_value(p, vals);
      if (compare(candidate, solution_objective, p.params.perm, tol) ==
          Ordering::greater) {
        report.violations++;
        std::ostringstream note;
        note << "branch " << b.id
             << ": a sampled vertex ranks above the solution";
        report.notes.push_back(note.str());
      }
    } catch (const Error&) {
      // A vertex draw that breaks down numerically or hits an unresolvable
      // branch is skipped; it cannot certify either way.
      continue;
    }
  }
  report.ok = report.violations == 0;
  return report;
}

}  // namespace ivif
