#include "bcp/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "bcp/consistency.hpp"
#include "bcp/io.hpp"
#include "bcp/reduction.hpp"
#include "bcp/rulegen.hpp"
#include "bcp/solver.hpp"

namespace bcp {

namespace {

struct Loaded {
  CspProblem problem;
  std::optional<CnfProblem> cnf;  // set when the input was DIMACS
};

Loaded load(const std::string& path) {
  const auto text = read_file(path);
  Loaded loaded;
  if (looks_like_dimacs(path, text)) {
    loaded.cnf = parse_dimacs(text);
    loaded.problem = cnf_to_csp(*loaded.cnf);
  } else {
    loaded.problem = parse_bcn(text);
  }
  return loaded;
}

const RuleSet& rules_for(const std::string& system) { return builtin_ruleset(parse_system(system)); }

void print_trace(std::ostream& out, const std::vector<CspStep>& trace, const Vocabulary& names) {
  for (const auto& step : trace) out << format_step(step, names) << "\n";
}

int cmd_solve(const std::string& path, const std::string& system, bool trace, std::ostream& out) {
  const auto loaded = load(path);
  const auto& rules = rules_for(system);
  if (trace) {
    out << "# propagation at the root\n";
    print_trace(out, close(loaded.problem.csp, rules).trace, loaded.problem.names);
  }
  const auto result =
      loaded.cnf ? solve(*loaded.cnf, rules) : solve(loaded.problem.csp, rules);
  if (result.status == SolveStatus::Unsat) {
    out << "UNSAT\n";
  } else {
    out << "SAT\n";
    const auto vars = loaded.problem.csp.vars();
    for (std::size_t i = 0; i < result.model->values.size(); ++i) {
      out << loaded.problem.names.name(vars[i]) << " = " << (result.model->values[i] ? 1 : 0) << "\n";
    }
  }
  out << "# propagation steps: " << result.propagation_steps << "\n";
  out << "# splits: " << result.split_count << "\n";
  return result.status == SolveStatus::Sat ? kExitOk : kExitFailed;
}

int cmd_propagate(const std::string& path, const std::string& system, bool trace, std::ostream& out) {
  const auto loaded = load(path);
  const auto closure = close(loaded.problem.csp, rules_for(system), trace);
  if (trace) print_trace(out, closure.trace, loaded.problem.names);
  out << print_bcn(closure.result, loaded.problem.names);
  if (is_failed(closure.result)) {
    out << "# failed\n";
    return kExitFailed;
  }
  return kExitOk;
}

int cmd_check(const std::string& path, bool hyper_arc, bool limited, bool closed, const std::string& system,
              std::ostream& out) {
  if (!hyper_arc && !limited && !closed) hyper_arc = true;
  const auto loaded = load(path);
  const auto& csp = loaded.problem.csp;
  const auto& names = loaded.problem.names;
  bool ok = true;
  if (hyper_arc) {
    const auto report = hyper_arc_consistent(csp);
    out << (report.hyper_arc ? "hyper-arc consistent" : "not hyper-arc consistent") << "\n";
    for (const auto& w : report.witnesses) {
      out << "  " << to_string(w.constraint, names) << ": " << names.name(w.var) << " = " << (w.value ? 1 : 0)
          << " has no support\n";
    }
    ok = ok && report.hyper_arc;
  }
  if (limited) {
    const bool is = is_limited(csp);
    out << (is ? "limited" : "not limited") << "\n";
    ok = ok && is;
  }
  if (closed) {
    const auto& rules = rules_for(system);
    const bool is = closed_under(csp, rules);
    out << (is ? "closed under " : "not closed under ") << system_name(rules.system) << "\n";
    if (!is) {
      for (const auto& rule : rules.rules) {
        for (const auto& step : apply_rule_csp(rule, csp)) {
          if (step.relevant) out << "  " << format_step(step, names) << "\n";
        }
      }
    }
    ok = ok && is;
  }
  return ok ? kExitOk : kExitFailed;
}

int cmd_gen_rules(const std::string& kind_name, std::ostream& out) {
  bool complete = true;
  for (auto kind : kAllKinds) {
    if (!kind_name.empty() && keyword(kind) != kind_name) continue;
    for (const auto& r : generate_rules(kind)) {
      out << format_rule(r) << "\n";
      if (r.name.ends_with("?")) complete = false;
    }
  }
  return complete ? kExitOk : kExitFailed;
}

int cmd_translate(const std::string& path, bool to_cnf, bool to_bcn, std::ostream& out) {
  const auto text = read_file(path);
  const bool dimacs = looks_like_dimacs(path, text);
  if (to_cnf) {
    if (dimacs) throw CLI::ValidationError("--to-cnf expects a .bcn input");
    // Declaration order already numbers the variables 0..n-1.
    const auto problem = parse_bcn(text);
    const auto& csp = problem.csp;
    out << print_dimacs(csp_to_clauses(csp), problem.names, static_cast<std::uint32_t>(csp.size()));
    return kExitOk;
  }
  if (!to_bcn) throw CLI::ValidationError("translate needs --to-cnf or --to-bcn");
  if (!dimacs) throw CLI::ValidationError("--to-bcn expects a DIMACS input");
  const auto problem = cnf_to_csp(parse_dimacs(text));
  out << print_bcn(problem.csp, problem.names);
  return kExitOk;
}

int cmd_verify(const std::string& theorem, const SweepOptions& options, std::ostream& out) {
  VerificationReport report;
  if (theorem == "reduction1") report = verify_reduction1(options);
  else if (theorem == "reduction2") report = verify_reduction2(options);
  else if (theorem == "characterization") report = verify_characterization(options);
  else if (theorem == "bool-prime") report = verify_bool_prime(options);
  else report = verify_completeness();
  const Vocabulary names{"x", "y", "z", "u", "v", "w"};
  for (const auto& cx : report.counterexamples) {
    out << "# " << cx.description << "\n";
    if (cx.csp) out << print_bcn(*cx.csp, names);
  }
  out << "# " << report.theorem << ": " << report.instances << " instances, " << report.seconds << " s\n";
  out << report.counterexamples.size() << " counterexamples\n";
  return report.ok() ? kExitOk : kExitFailed;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boolean constraint propagation toolkit", "bcp"};
  app.require_subcommand(1);

  std::string system = "bool";
  std::string path;
  bool trace = false;
  const auto system_check = CLI::IsMember({"bool", "bool-prime", "BOOL", "BOOL'", "bool'"});

  auto* solve_cmd = app.add_subcommand("solve", "Propagate and label until a solution is found");
  solve_cmd->add_option("--system", system, "Rule system")->check(system_check);
  solve_cmd->add_flag("--trace", trace, "Print the propagation steps at the root");
  solve_cmd->add_option("file", path, ".bcn or DIMACS file")->required();

  auto* prop_cmd = app.add_subcommand("propagate", "Close a CSP under a rule system");
  prop_cmd->add_option("--system", system, "Rule system")->check(system_check);
  prop_cmd->add_flag("--trace", trace, "Print every rule application");
  prop_cmd->add_option("file", path, ".bcn or DIMACS file")->required();

  bool hyper_arc = false, limited = false, closed = false;
  auto* check_cmd = app.add_subcommand("check", "Check consistency properties");
  check_cmd->add_flag("--hyper-arc", hyper_arc, "Hyper-arc consistency (default)");
  check_cmd->add_flag("--limited", limited, "The limited condition");
  check_cmd->add_flag("--closed", closed, "Closure under --system");
  check_cmd->add_option("--system", system, "Rule system")->check(system_check);
  check_cmd->add_option("file", path, ".bcn or DIMACS file")->required();

  std::string kind;
  auto* gen_cmd = app.add_subcommand("gen-rules", "Generate the minimal rules of each constraint kind");
  gen_cmd->add_option("--kind", kind, "Only this kind")->check(CLI::IsMember({"eq", "not", "and", "or"}));

  bool to_cnf = false, to_bcn = false;
  auto* tr_cmd = app.add_subcommand("translate", "Translate between .bcn and DIMACS");
  auto* cnf_flag = tr_cmd->add_flag("--to-cnf", to_cnf, ".bcn to DIMACS");
  tr_cmd->add_flag("--to-bcn", to_bcn, "DIMACS to .bcn")->excludes(cnf_flag);
  tr_cmd->add_option("file", path, "Input file")->required();

  std::string theorem;
  SweepOptions options;
  auto* verify_cmd = app.add_subcommand("verify", "Run a theorem sweep");
  verify_cmd->add_option("--theorem", theorem, "Theorem to check")
      ->required()
      ->check(CLI::IsMember({"reduction1", "reduction2", "characterization", "bool-prime", "completeness"}));
  verify_cmd->add_option("--seed", options.seed, "Random seed");
  verify_cmd->add_option("--budget", options.budget, "Random instances per sweep");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostream& stream = e.get_exit_code() == 0 ? out : err;
    stream << (e.get_exit_code() == 0 ? app.help() : std::string(e.what()) + "\n");
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(path, system, trace, out);
    if (*prop_cmd) return cmd_propagate(path, system, trace, out);
    if (*check_cmd) return cmd_check(path, hyper_arc, limited, closed, system, out);
    if (*gen_cmd) return cmd_gen_rules(kind, out);
    if (*tr_cmd) return cmd_translate(path, to_cnf, to_bcn, out);
    if (*verify_cmd) return cmd_verify(theorem, options, out);
  } catch (const ParseError& e) {
    err << path << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace bcp
