// Benchmark: serial vs parallel branch sweep on a growing enumeration.
//
// Builds a two-variable demo model and duplicates its inequality constraint
// to multiply the chain-pattern space (each copy adds a factor of 8), then
// times solve() once through the serial reference path and once through the
// parallel sweep. Usage: bench_branches [extra_inequalities] [repetitions].

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "ivif/solver.hpp"

namespace {

ivif::Problem make_model(int extra_inequalities) {
  using ivif::Ivifn;
  ivif::Problem p;
  p.variables = {{"x1", ivif::VarKind::crisp_unrestricted},
                 {"x2", ivif::VarKind::crisp_unrestricted}};
  p.objective = {Ivifn(5, 2, 2, 3, 3, 5, 5, 5, 4),
                 Ivifn(8, 1, 1, 2, 2, 4, 4, 2, 3)};

  ivif::Constraint balance;
  balance.coeffs = {Ivifn(12, 2, 3, 4, 4, 6, 8, 4, 4),
                    Ivifn(4, 1, 1, 2, 2, 4, 4, 2, 2)};
  balance.relation = ivif::Relation::eq;
  balance.rhs = Ivifn(100, 25, 35, 50, 50, 80, 100, 50, 50);
  p.constraints.push_back(balance);

  ivif::Constraint budget;
  budget.coeffs = {Ivifn(6, 3, 4, 4, 4, 6, 6, 4, 4),
                   Ivifn(10, 3, 4, 4, 5, 6, 8, 5, 5)};
  budget.relation = ivif::Relation::leq;
  budget.rhs = Ivifn(150, 50, 60, 50, 70, 120, 100, 80, 70);
  p.constraints.push_back(budget);
  // Identical copies keep the feasible set but multiply the pattern space.
  for (int i = 0; i < extra_inequalities; ++i) p.constraints.push_back(budget);
  return p;
}

double time_solve(const ivif::Problem& p, const ivif::ExecPolicy& policy,
                  int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    (void)ivif::solve(p, policy);
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int extra = argc > 1 ? std::atoi(argv[1]) : 2;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
  if (extra < 0 || reps < 1) {
    std::fprintf(stderr, "usage: %s [extra_inequalities >= 0] [reps >= 1]\n",
                 argv[0]);
    return 1;
  }

  const ivif::Problem p = make_model(extra);
  const long branches = ivif::branch_space(p).count;
  std::printf("branches: %ld (%d inequality constraints)\n", branches,
              extra + 1);

  ivif::ExecPolicy serial;
  serial.parallel = false;
  const double t_serial = time_solve(p, serial, reps);
  std::printf("serial:   %8.3f ms\n", t_serial * 1e3);

  ivif::ExecPolicy parallel;
  parallel.parallel = true;
  const double t_parallel = time_solve(p, parallel, reps);
  std::printf("parallel: %8.3f ms  (speedup %.2fx)\n", t_parallel * 1e3,
              t_serial / t_parallel);
  return 0;
}
