// Acceptance suite: seven end-to-end criteria, one PASS/FAIL line each.
// Exits non-zero when any criterion fails. Tolerances are pinned inline so
// the output is self-describing.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include "ivif/ranking.hpp"
#include "ivif/solver.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace ivif;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

int failures = 0;

void report(int n, bool ok, const std::string& what, double secs,
            const std::string& detail = "") {
  std::printf("%s criterion-%d: %s [%.2fs]%s%s\n", ok ? "PASS" : "FAIL", n,
              what.c_str(), secs, detail.empty() ? "" : " — ",
              detail.c_str());
  if (!ok) ++failures;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool within_componentwise(const Ivifn& got, const Ivifn& want, double tol) {
  const auto g = oracles::components(got);
  const auto w = oracles::components(want);
  for (int i = 0; i < 9; ++i)
    if (!close(g[i], w[i], tol)) return false;
  return true;
}

// |got - want| <= rel * max(1, |want|) in every component.
bool within_relative(const Ivifn& got, const Ivifn& want, double rel) {
  const auto g = oracles::components(got);
  const auto w = oracles::components(want);
  for (int i = 0; i < 9; ++i)
    if (std::abs(g[i] - w[i]) > rel * std::max(1.0, std::abs(w[i])))
      return false;
  return true;
}

void criterion1() {
  Timer t;
  const double tol = 1e-6;
  std::ostringstream detail;
  bool ok = true;
  try {
    const Solution s = solve(fixtures::demo_two_var());
    const auto want = fixtures::demo_stage_optima();
    for (int i = 0; i < 7; ++i)
      if (!close(s.stage_optima[i], want[i], tol)) {
        ok = false;
        detail << "stage " << i + 1 << " optimum " << s.stage_optima[i]
               << " != " << want[i] << "; ";
      }
    if (!close(s.variable_values[0].a, fixtures::demo_x1(), tol) ||
        !close(s.variable_values[1].a, fixtures::demo_x2(), tol)) {
      ok = false;
      detail << "plan != (10, -5); ";
    }
    if (!within_componentwise(s.objective, fixtures::demo_objective_value(),
                              tol)) {
      ok = false;
      detail << "objective tuple off; ";
    }
  } catch (const std::exception& e) {
    ok = false;
    detail << e.what();
  }
  const double secs = t.seconds();
  if (secs >= 5.0) {
    ok = false;
    detail << "exceeded 5s budget";
  }
  report(1, ok, "two-variable demo: staircase, plan, and objective at 1e-6",
         secs, detail.str());
}

void criterion2() {
  Timer t;
  std::ostringstream detail;
  bool ok = true;
  try {
    const Solution s = solve(fixtures::manufacturing());
    struct Quantity {
      const char* name;
      Ivifn got, want;
    };
    const Quantity qs[] = {
        {"objective", s.objective, fixtures::manufacturing_reported_objective()},
        {"x1", s.variable_values[0], fixtures::manufacturing_reported_x1()},
        {"x2", s.variable_values[1], fixtures::manufacturing_reported_x2()},
        {"y1", s.variable_values[2], fixtures::manufacturing_reported_y1()},
    };
    for (const Quantity& q : qs) {
      const bool pct = within_relative(q.got, q.want, 0.01);
      bool dominates = false;
      if (!pct)
        dominates = compare(q.got, q.want) != Ordering::less;
      if (pct)
        detail << q.name << " within 1%; ";
      else if (dominates)
        detail << q.name << " outside 1% but weakly dominates; ";
      else {
        ok = false;
        detail << q.name << " below the published value; ";
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail << e.what();
  }
  const double secs = t.seconds();
  if (secs >= 60.0) {
    ok = false;
    detail << "exceeded 60s budget";
  }
  report(2, ok, "manufacturing model reproduces the published plan", secs,
         detail.str());
}

void criterion3() {
  Timer t;
  const double tol = 0.02;
  std::ostringstream detail;
  bool ok = true;
  try {
    const Ivifn slack = fixtures::manufacturing_alt_slack();
    const Ivifn cw = fixtures::manufacturing_alt_componentwise();
    const Ivifn ours = solve(fixtures::manufacturing()).objective;
    const double want_slack = -75.34, want_cw = -58.96, want_ours = -30.89;
    if (!close(score(slack), want_slack, tol)) {
      ok = false;
      detail << "slack-based score " << score(slack) << "; ";
    }
    if (!close(score(cw), want_cw, tol)) {
      ok = false;
      detail << "componentwise score " << score(cw) << "; ";
    }
    if (!close(score(ours), want_ours, tol)) {
      ok = false;
      detail << "our score " << score(ours) << "; ";
    }
    if (compare(slack, cw) != Ordering::less ||
        compare(cw, ours) != Ordering::less) {
      ok = false;
      detail << "ranking order broken; ";
    }
  } catch (const std::exception& e) {
    ok = false;
    detail << e.what();
  }
  report(3, ok,
         "competing objectives score -75.34 / -58.96 / -30.89 (0.02) and "
         "rank in that order",
         t.seconds(), detail.str());
}

void criterion4() {
  Timer t;
  std::ostringstream detail;
  bool ok = true;
  try {
    const Problem p = fixtures::demo_two_var();
    const ComponentSpace space = component_space(p);
    Branch b;
    b.sign = {+1, -1};
    b.cls = {1, 1};
    b.pattern = {-1, 0};

    const std::vector<TaggedRow> eq = equality_rows(p, space, b, 0);
    const LpRow& mean = eq[0].row;
    // mean row is 12 x1 + 4 x2 = 100, i.e. 3 x1 + x2 = 25 scaled by 4
    const double f = mean.rhs / 25.0;
    if (!(close(mean.coeff[0], 3.0 * f, 1e-12) &&
          close(mean.coeff[1], 1.0 * f, 1e-12) && mean.rel == Rel::eq)) {
      ok = false;
      detail << "mean row not proportional to 3x1 + x2 = 25; ";
    }
    const LpRow& mul_row = eq[1].row;  // innermost left-spread component
    if (!(close(mul_row.coeff[0], 2.0, 1e-12) &&
          close(mul_row.coeff[1], -1.0, 1e-12) &&
          close(mul_row.rhs, 25.0, 1e-12) && mul_row.rel == Rel::eq)) {
      ok = false;
      detail << "magnitude row is not 2x1 - x2 = 25; ";
    }

    const std::vector<TaggedRow> lex = lex_rows(p, space, b, 1);
    if (lex.size() != 1) {
      ok = false;
      detail << "all-strict pattern must yield one row; ";
    } else {
      const LpRow& r = lex[0].row;
      // score difference 7.5 - x1/8 >= k with k = 1e-4
      if (!(r.rel == Rel::ge && close(r.coeff[0], -0.125, 1e-12) &&
            close(r.coeff[1], 0.0, 1e-12) &&
            close(r.rhs, 1e-4 - 7.5, 1e-12))) {
        ok = false;
        detail << "leading strictness row is not -x1/8 >= k - 7.5; ";
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail << e.what();
  }
  report(4, ok,
         "branch rows: componentwise equalities and the strict score row "
         "match hand expansion",
         t.seconds(), detail.str());
}

void criterion5() {
  Timer t;
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> lambda(-8.0, 8.0);
  const int n = 10000;
  const double rel = 1e-9;
  long bad = 0;
  std::ostringstream detail;

  auto rel_close = [&](double a, double b) {
    return std::abs(a - b) <= rel * std::max(1.0, std::abs(b));
  };
  auto tuples_close = [&](const Ivifn& x, const Ivifn& y) {
    const auto a = oracles::components(x);
    const auto b = oracles::components(y);
    for (int i = 0; i < 9; ++i)
      if (!rel_close(a[i], b[i])) return false;
    return true;
  };

  for (int i = 0; i < n; ++i) {
    const Ivifn x = oracles::random_ivifn(rng);
    const Ivifn y = oracles::random_ivifn(rng);
    const double l = lambda(rng);
    try {
      // closure: every result validates
      const Ivifn s = add(x, y);
      const Ivifn d = sub(x, y);
      const Ivifn m = mul(x, y);
      const Ivifn sm = scalar_mul(l, x);
      validate(s);
      validate(d);
      validate(m);
      validate(sm);
      // commutativity
      if (!tuples_close(s, add(y, x)) || !tuples_close(m, mul(y, x))) {
        ++bad;
        continue;
      }
      // a crisp factor reduces the product to scalar multiplication
      if (!tuples_close(mul(crisp(l), x), sm)) {
        ++bad;
        continue;
      }
      // the sign-class case formulas give the same product
      const auto want = oracles::pair_product(x, y);
      const auto got = oracles::components(m);
      for (int c = 0; c < 9; ++c)
        if (!rel_close(got[c], want[c])) {
          ++bad;
          break;
        }
    } catch (const std::exception& e) {
      ++bad;
      if (detail.str().empty()) detail << "sample " << i << ": " << e.what();
    }
  }
  if (bad) detail << " (" << bad << "/" << n << " samples failed)";
  report(5, bad == 0,
         "arithmetic on 10000 random pairs: closure, commutativity, crisp "
         "factors, and case-formula agreement at 1e-9",
         t.seconds(), detail.str());
}

void criterion6() {
  Timer t;
  std::mt19937_64 rng(6060);
  const int n = 10000;
  long bad = 0;
  std::ostringstream detail;

  auto weakly_below = [](const Ivifn& a, const Ivifn& b) {
    return compare(a, b) != Ordering::greater;
  };

  for (int i = 0; i < n; ++i) {
    const Ivifn x = oracles::random_ivifn(rng);
    const Ivifn y = oracles::random_ivifn(rng);
    const Ivifn z = oracles::random_ivifn(rng);
    bool ok = true;
    // reflexivity and identical copies
    ok = ok && compare(x, x) == Ordering::equal;
    // antisymmetry: mutually equal verdicts only for componentwise equals
    if (compare(x, y) == Ordering::equal && compare(y, x) == Ordering::equal)
      ok = ok && ivifn_equal(x, y);
    // totality: the two directions agree
    const Ordering xy = compare(x, y);
    const Ordering yx = compare(y, x);
    ok = ok && ((xy == Ordering::equal && yx == Ordering::equal) ||
                (xy == Ordering::less && yx == Ordering::greater) ||
                (xy == Ordering::greater && yx == Ordering::less));
    // transitivity of the weak order
    if (weakly_below(x, y) && weakly_below(y, z))
      ok = ok && weakly_below(x, z);
    if (!ok) {
      ++bad;
      if (detail.str().empty()) detail << "order axiom failed at sample " << i;
    }
  }

  // closed-form indices against their defining integrals
  const double itol = 1e-8;
  for (int i = 0; i < 1000; ++i) {
    const Ivifn x = oracles::random_ivifn(rng);
    const auto [is, ia] = oracles::integral_indices(x);
    const auto [ts, ta] = tivifn_indices(characteristic_points(x));
    if (!(close(score(x), is, itol) && close(accuracy(x), ia, itol) &&
          close(ts, is, itol) && close(ta, ia, itol))) {
      ++bad;
      if (detail.str().empty())
        detail << "integral route disagrees at sample " << i;
    }
  }
  if (bad) detail << " (" << bad << " failures)";
  report(6, bad == 0,
         "ranking order axioms on 10000 triples; closed-form indices match "
         "quadrature at 1e-8",
         t.seconds(), detail.str());
}

void criterion7() {
  Timer t;
  std::mt19937_64 rng(7700);
  const int n = 200;
  const double tol = 1e-6;
  long bad = 0;
  std::ostringstream detail;

  for (int i = 0; i < n; ++i) {
    Problem p = oracles::random_equivalence_instance(rng);
    try {
      p.params.mode = LexMode::resolved;
      const Solution a = solve(p);
      p.params.mode = LexMode::bigM;
      const Solution b = solve(p);
      bool ok = true;
      for (int s = 0; s < 7; ++s)
        ok = ok && close(a.stage_optima[s], b.stage_optima[s], tol);
      if (!ok) {
        ++bad;
        if (detail.str().empty())
          detail << "modes disagree at instance " << i;
        continue;
      }
      std::array<double, 2> witness{};
      if (oracles::grid_dominates(p, a.stage_optima, 1e-4, 150, &witness)) {
        ++bad;
        if (detail.str().empty())
          detail << "grid point (" << witness[0] << ", " << witness[1]
                 << ") dominates instance " << i;
      }
    } catch (const std::exception& e) {
      ++bad;
      if (detail.str().empty()) detail << "instance " << i << ": " << e.what();
    }
  }
  if (bad) detail << " (" << bad << "/" << n << " instances failed)";
  report(7, bad == 0,
         "200 random models: resolved == bigM at 1e-6 and no dominating "
         "0.1-grid point",
         t.seconds(), detail.str());
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  if (failures) std::printf("%d criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
