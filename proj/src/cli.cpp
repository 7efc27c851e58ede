#include "ivif/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "ivif/json_io.hpp"
#include "ivif/ranking.hpp"
#include "ivif/solver.hpp"

namespace ivif {

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin),
                       std::istreambuf_iterator<char>());
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open file: " + path);
  return std::string(std::istreambuf_iterator<char>(f),
                     std::istreambuf_iterator<char>());
}

nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what());
  }
}

std::string full(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

ExecPolicy policy_from_env() {
  ExecPolicy policy;
  if (const char* env = std::getenv("IVIF_LEXOPT_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && n > 0) {
      policy.max_threads = static_cast<int>(n);
      policy.parallel = n > 1;
    }
  }
  return policy;
}

struct SolveOpts {
  std::string path = "-";
  bool json = false;
  bool trace = false;
  long branch_cap = 0;
  double k = 0.0, big_k = 0.0, lex_slack = 0.0;
  std::string perm;
};

int cmd_solve(const SolveOpts& opts, const CLI::App& cmd, std::ostream& out) {
  Problem p = parse(read_input(opts.path));
  if (cmd.count("--branch-cap")) p.params.branch_cap = opts.branch_cap;
  if (cmd.count("--k")) p.params.k = opts.k;
  if (cmd.count("--K")) p.params.K = opts.big_k;
  if (cmd.count("--lex-slack")) p.params.lex_slack = opts.lex_slack;
  if (cmd.count("--perm")) p.params.perm = parse_permutation(opts.perm);

  std::vector<StageTrace> trace;
  const Solution s = solve_traced(p, trace, policy_from_env());

  if (opts.json) {
    nlohmann::json j = solution_to_json(p, s);
    if (opts.trace) {
      nlohmann::json jt = nlohmann::json::array();
      for (const StageTrace& st : trace) {
        jt.push_back({{"stage", st.stage},
                      {"optimum", st.optimum},
                      {"winner", st.winner},
                      {"feasible", st.feasible}});
      }
      j["trace"] = jt;
    }
    out << j.dump(2) << "\n";
    return 0;
  }

  const std::string letters = permutation_to_string(p.params.perm);
  out << "status: optimal\n";
  out << "stage optima [" << letters << "]:";
  for (int i = 0; i < 7; ++i) out << " " << format_number(s.stage_optima[i]);
  out << "\n";
  if (opts.trace) {
    for (const StageTrace& st : trace) {
      out << "stage " << st.stage << " [" << letters[st.stage - 1]
          << "]: optimum=" << format_number(st.optimum)
          << " winner=" << st.winner << " feasible=" << st.feasible << "\n";
    }
  }
  for (std::size_t v = 0; v < p.variables.size(); ++v) {
    out << p.variables[v].name << " = " << format_tuple(s.variable_values[v])
        << "\n";
  }
  out << "objective = " << format_tuple(s.objective) << "\n";
  out << "branches: explored=" << s.branch_stats.explored
      << " feasible=" << s.branch_stats.feasible
      << " ties=" << s.branch_stats.ties << "\n";
  return 0;
}

std::string format_key(const LexKey& key) {
  static const char* const names[7] = {"S", "A", "M", "C", "D", "G", "H"};
  const auto v = key.values();
  std::ostringstream o;
  o << "(";
  for (int i = 0; i < 7; ++i) {
    if (i) o << ", ";
    o << names[i] << "=" << format_number(v[i]);
  }
  o << ")";
  return o.str();
}

int cmd_rank(const std::string& path, const std::string& perm_text,
             bool have_perm, std::ostream& out) {
  const nlohmann::json j = parse_json(read_input(path));
  Ivifn first, second;
  if (j.is_array() && j.size() == 2) {
    first = ivifn_from_json(j[0]);
    second = ivifn_from_json(j[1]);
  } else if (j.is_object() && j.contains("first") && j.contains("second")) {
    first = ivifn_from_json(j["first"]);
    second = ivifn_from_json(j["second"]);
  } else {
    throw ParseError(
        "rank input must be a two-element array or an object with "
        "\"first\" and \"second\"");
  }
  const KeyPermutation perm =
      have_perm ? parse_permutation(perm_text) : default_permutation();

  out << "first  = " << format_tuple(first) << "\n";
  out << "key    = " << format_key(lex_key(first)) << "\n";
  out << "second = " << format_tuple(second) << "\n";
  out << "key    = " << format_key(lex_key(second)) << "\n";
  const Ordering ord = compare(first, second, perm);
  const char* sym = ord == Ordering::less      ? "≺"
                    : ord == Ordering::greater ? "≻"
                                               : "=";
  out << "verdict: first " << sym << " second\n";
  return 0;
}

int cmd_eval(const std::string& path, std::ostream& out) {
  const nlohmann::json j = parse_json(read_input(path));
  if (!j.is_object() || !j.contains("numbers") || !j.contains("ops"))
    throw ParseError("eval input must carry \"numbers\" and \"ops\"");

  std::map<std::string, Ivifn> env;
  for (const auto& [name, value] : j.at("numbers").items())
    env[name] = ivifn_from_json(value);

  auto lookup = [&](const std::string& name) -> const Ivifn& {
    auto it = env.find(name);
    if (it == env.end())
      throw ValidationError("undefined name '" + name + "'");
    return it->second;
  };

  const nlohmann::json& ops = j.at("ops");
  if (!ops.is_array() || ops.empty())
    throw ParseError("\"ops\" must be a non-empty array");

  Ivifn result;
  for (const auto& op : ops) {
    if (!op.is_object() || !op.contains("op") || !op.contains("args"))
      throw ParseError("each op needs \"op\" and \"args\"");
    const std::string kind = op.at("op").get<std::string>();
    const nlohmann::json& args = op.at("args");
    if (kind == "smul") {
      if (!op.contains("lambda") || !op.at("lambda").is_number())
        throw ParseError("smul needs a numeric \"lambda\"");
      if (!args.is_array() || args.size() != 1)
        throw ParseError("smul takes one argument");
      result = scalar_mul(op.at("lambda").get<double>(),
                          lookup(args[0].get<std::string>()));
    } else {
      if (!args.is_array() || args.size() != 2)
        throw ParseError("'" + kind + "' takes two arguments");
      const Ivifn& x = lookup(args[0].get<std::string>());
      const Ivifn& y = lookup(args[1].get<std::string>());
      if (kind == "add")
        result = add(x, y);
      else if (kind == "sub")
        result = sub(x, y);
      else if (kind == "mul")
        result = mul(x, y);
      else
        throw ParseError("unknown op '" + kind +
                         "'; expected add, sub, smul, or mul");
    }
    if (op.contains("as")) env[op.at("as").get<std::string>()] = result;
  }
  out << format_tuple(result) << "\n";
  return 0;
}

int cmd_plot(const std::string& path, int samples, std::ostream& out) {
  if (samples < 2) throw ValidationError("plot needs at least 2 samples");
  const Ivifn x = ivifn_from_json(parse_json(read_input(path)));
  double lo = x.a - x.nu_l;
  double hi = x.a + x.nu_r;
  if (!(hi > lo)) {
    lo = x.a - 0.5;  // degenerate support: give the crisp point some width
    hi = x.a + 0.5;
  }
  out << "x,mu_L,mu_U,nu_L,nu_U\n";
  for (int i = 0; i < samples; ++i) {
    const double t = lo + (hi - lo) * i / (samples - 1);
    out << full(t) << "," << full(mu_lower(x, t)) << "," << full(mu_upper(x, t))
        << "," << full(nu_lower(x, t)) << "," << full(nu_upper(x, t)) << "\n";
  }
  return 0;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    std::size_t last = s.find_last_not_of('0');
    if (s[last] == '.') --last;
    s.erase(last + 1);
  }
  if (s == "-0") s = "0";
  return s;
}

std::string format_tuple(const Ivifn& x) {
  std::ostringstream o;
  o << "(" << format_number(x.a) << ";" << format_number(x.mu_l) << ","
    << format_number(x.mu_r) << "," << format_number(x.mup_l) << ","
    << format_number(x.mup_r) << ";" << format_number(x.nu_l) << ","
    << format_number(x.nu_r) << "," << format_number(x.nup_l) << ","
    << format_number(x.nup_r) << ")";
  return o.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"LR-type interval-valued intuitionistic fuzzy LP toolkit"};
  app.require_subcommand(1);

  SolveOpts solve_opts;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Solve an optimization model");
  solve_cmd->add_option("input", solve_opts.path,
                        "model JSON path ('-' for stdin)");
  solve_cmd->add_flag("--json", solve_opts.json, "emit the solution as JSON");
  solve_cmd->add_flag("--trace", solve_opts.trace, "include per-stage trace");
  solve_cmd->add_option("--branch-cap", solve_opts.branch_cap,
                        "enumeration cap override");
  solve_cmd->add_option("--k", solve_opts.k, "strictness margin override");
  solve_cmd->add_option("--K", solve_opts.big_k, "big-M constant override");
  solve_cmd->add_option("--lex-slack", solve_opts.lex_slack,
                        "stage carry headroom override");
  solve_cmd->add_option("--perm", solve_opts.perm,
                        "key order, e.g. SAMCDGH");

  std::string rank_path = "-";
  std::string rank_perm;
  CLI::App* rank_cmd = app.add_subcommand("rank", "Compare two numbers");
  rank_cmd->add_option("input", rank_path,
                       "JSON with two numbers ('-' for stdin)");
  rank_cmd->add_option("--perm", rank_perm, "key order, e.g. SAMCDGH");

  std::string eval_path = "-";
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Evaluate arithmetic over named numbers");
  eval_cmd->add_option("input", eval_path,
                       "JSON expression document ('-' for stdin)");

  std::string plot_path = "-";
  int plot_samples = 201;
  CLI::App* plot_cmd =
      app.add_subcommand("plot", "Emit CSV curve data for one number");
  plot_cmd->add_option("input", plot_path, "number JSON ('-' for stdin)");
  plot_cmd->add_option("--samples", plot_samples, "row count (>= 2)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("ivif-lexopt");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve_opts, *solve_cmd, out);
    if (rank_cmd->parsed())
      return cmd_rank(rank_path, rank_perm, rank_cmd->count("--perm") > 0,
                      out);
    if (eval_cmd->parsed()) return cmd_eval(eval_path, out);
    if (plot_cmd->parsed()) return cmd_plot(plot_path, plot_samples, out);
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const Unbounded& e) {
    err << "unbounded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace ivif
