#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ivif/ivifn.hpp"

namespace ivif {

/// Command-line front end (subcommands solve, rank, eval, plot). Returns the
/// process exit code: 0 success, 1 usage/parse/validation errors, 2
/// infeasible, 3 unbounded. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

/// Report formatting: fixed 4 decimals with trailing zeros (and a bare dot)
/// trimmed; negative zero normalized.
std::string format_number(double v);

/// "(a;mu_l,mu_r,mup_l,mup_r;nu_l,nu_r,nup_l,nup_r)" with report formatting.
std::string format_tuple(const Ivifn& x);

}  // namespace ivif
