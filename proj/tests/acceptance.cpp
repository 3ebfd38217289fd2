// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "bcp/consistency.hpp"
#include "bcp/random.hpp"
#include "bcp/reduction.hpp"
#include "bcp/rulegen.hpp"
#include "bcp/solver.hpp"

using namespace bcp;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool condition, const std::string& why) {
    if (!condition && pass) {
      pass = false;
      detail = why;
    }
  }
};

const Var x{0}, y{1}, z{2};

Outcome completeness() {
  Outcome o;
  std::size_t total = 0;
  for (auto kind : kAllKinds) {
    const auto start = Clock::now();
    const auto generated = minimal_rules(truth_table(kind));
    const double seconds = since(start);
    std::vector<CandidateRule> table1;
    for (const auto& r : builtin_ruleset(RuleSystem::Bool).rules) {
      if (r.kind == kind) table1.push_back(*to_candidate(r));
    }
    std::sort(table1.begin(), table1.end());
    const std::size_t expected = arity(kind) == 2 ? 4 : 6;
    o.require(generated == table1, std::string(keyword(kind)) + " rules differ from the table");
    o.require(generated.size() == expected, std::string(keyword(kind)) + " has the wrong rule count");
    o.require(seconds < 1.0, std::string(keyword(kind)) + " took " + std::to_string(seconds) + " s");
    total += generated.size();
  }
  const auto report = verify_completeness();
  o.require(report.ok(), report.ok() ? "" : report.counterexamples[0].description);
  o.require(total == 20, "generated " + std::to_string(total) + " rules");
  o.detail = o.pass ? "20 rules (4 EQ, 4 NOT, 6 AND, 6 OR) match by structure" : o.detail;
  return o;
}

Outcome characterization() {
  Outcome o;
  const auto report = verify_characterization({1000, 1});
  o.require(report.ok(), report.ok() ? "" : report.counterexamples[0].description);
  o.require(report.instances >= 72 + 1000, "too few instances");
  o.require(report.seconds < 10.0, "took " + std::to_string(report.seconds) + " s");
  std::size_t nonfailed_singles = 0;
  for (const auto& csp : single_constraint_csps()) nonfailed_singles += is_failed(csp) ? 0 : 1;
  o.require(nonfailed_singles == 72, "single-constraint sweep is not 72 instances");
  if (o.pass) {
    o.detail = std::to_string(report.instances) + " instances, 0 counterexamples, " +
               std::to_string(report.seconds) + " s";
  }
  return o;
}

Outcome necessity() {
  Outcome o;
  const auto& rules = builtin_ruleset(RuleSystem::Bool);
  for (const auto& rule : rules.rules) {
    const auto report = verify_characterization({1000, 1}, rules.without(rule.name));
    o.require(!report.ok(), "removing " + rule.name + " finds no counterexample");
    if (rule.name == "AND 4") {
      const BooleanCSP witness({x, y, z}, {Domain::zero(), Domain::full(), Domain::full()},
                               {Constraint::conj(x, y, z)});
      const bool found = std::any_of(report.counterexamples.begin(), report.counterexamples.end(),
                                     [&](const Counterexample& c) { return c.csp && *c.csp == witness; });
      o.require(found, "AND 4 witness <x & y = z; x = 0> not found");
    }
  }
  if (o.pass) o.detail = "each of the 20 removals yields a counterexample; AND 4 witness reproduced";
  return o;
}

Outcome failed_guard() {
  Outcome o;
  const BooleanCSP failed({x, y, z}, {Domain::none(), Domain::full(), Domain::full()}, {Constraint::conj(x, y, z)});
  o.require(closed_under(failed, builtin_ruleset(RuleSystem::Bool)), "not closed under BOOL");
  o.require(!is_hyper_arc_consistent(failed), "reported hyper-arc consistent");
  if (o.pass) o.detail = "closed under BOOL, not hyper-arc consistent";
  return o;
}

Outcome reduction1() {
  Outcome o;
  std::size_t longest = 0;
  for (const auto& rule : builtin_ruleset(RuleSystem::Bool).rules) {
    const auto s1 = minimal_matching_store(rule);
    const auto steps = apply_rule_store(rule, s1);
    o.require(steps.size() == 1, rule.name + " does not match its minimal store");
    if (steps.size() != 1) continue;
    std::vector<UnitStep> path;
    try {
      path = simulate_bool_by_unit(s1, steps[0]);
    } catch (const Error& e) {
      o.require(false, rule.name + ": " + e.what());
      continue;
    }
    ClauseSet current = constraints_to_clauses(s1);
    for (const auto& u : path) current = apply_unit(current, u.op, u.unit, u.target);
    o.require(path.size() <= 4, rule.name + " needs " + std::to_string(path.size()) + " unit steps");
    o.require(current == constraints_to_clauses(steps[0].after), rule.name + " does not end on the target");
    longest = std::max(longest, path.size());
    if (rule.name == "OR 3") {
      const std::vector<std::tuple<UnitOp, Literal, Clause>> script = {
          {UnitOp::Resolve, pos(z), Clause{pos(x), pos(y), neg(z)}},
          {UnitOp::Subsume, pos(z), Clause{neg(x), pos(z)}},
          {UnitOp::Subsume, pos(z), Clause{neg(y), pos(z)}},
          {UnitOp::Resolve, neg(x), Clause{pos(x), pos(y)}},
      };
      bool same = path.size() == script.size();
      for (std::size_t i = 0; same && i < path.size(); ++i) {
        same = path[i].op == std::get<0>(script[i]) && path[i].unit == std::get<1>(script[i]) &&
               path[i].target == std::get<2>(script[i]);
      }
      o.require(same, "OR 3 does not follow the four-step script");
    }
  }
  const auto sweep = verify_reduction1({1000, 1});
  o.require(sweep.ok(), sweep.ok() ? "" : sweep.counterexamples[0].description);
  if (o.pass) {
    o.detail = "20 rules, at most " + std::to_string(longest) + " unit steps, OR 3 script exact; " +
               std::to_string(sweep.instances) + " random steps also simulated";
  }
  return o;
}

Outcome reduction2() {
  Outcome o;
  const auto report = verify_reduction2({500, 1});
  o.require(report.ok(), report.ok() ? "" : report.counterexamples[0].description);
  o.require(report.instances > 500, "too few unit steps exercised");
  if (o.pass) o.detail = std::to_string(report.instances) + " unit steps over 500 clause sets, 0 failures";
  return o;
}

bool clause_holds(const Clause& c, std::span<const std::uint8_t> values) {
  return std::any_of(c.literals().begin(), c.literals().end(),
                     [&](Literal l) { return (values[l.var.id] != 0) == l.positive; });
}

Outcome translation() {
  Outcome o;
  Rng rng(1);
  std::size_t stores = 0, wide = 0;
  while (stores < 250) {
    // The last 50 stores span exactly 12 variables.
    const auto s = stores < 200 ? random_store(rng, 12, 8, 4) : random_store(rng, 12, 12, 4);
    if (stores >= 200 && s.vars().size() != 12) continue;
    wide += s.vars().size() == 12 ? 1 : 0;
    const auto cs = constraints_to_clauses(s);
    const auto vars = s.vars();
    std::vector<std::uint8_t> values(max_var_id(s) + 1, 0);
    for (std::uint32_t code = 0; code < (1u << vars.size()); ++code) {
      for (std::size_t i = 0; i < vars.size(); ++i) values[vars[i].id] = (code >> i) & 1u;
      const bool clauses = std::all_of(cs.clauses().begin(), cs.clauses().end(),
                                       [&](const Clause& c) { return clause_holds(c, values); });
      o.require(clauses == satisfies(s, values), "store and clause models differ");
    }
    ++stores;
  }
  for (int trial = 0; trial < 500; ++trial) {
    const auto q = random_clause(rng, 6, 6);
    FreshVarSource fresh(Var{6});
    const auto translated = trans_clause(q, fresh);
    std::vector<std::uint8_t> projected(64, 0);
    for_each_model(translated, translated.vars(), [&](std::span<const std::uint8_t> values) {
      std::uint32_t code = 0;
      for (std::uint32_t i = 0; i < 6; ++i) code |= static_cast<std::uint32_t>(i < values.size() ? values[i] : 0) << i;
      projected[code] = 1;
      return true;
    });
    // Variables of the clause that the translation does not mention are free.
    std::uint32_t mentioned = 0;
    for (auto l : q.literals()) mentioned |= 1u << l.var.id;
    std::vector<std::uint8_t> values(6, 0);
    for (std::uint32_t code = 0; code < 64; ++code) {
      if (code & ~mentioned) continue;
      for (std::uint32_t i = 0; i < 6; ++i) values[i] = (code >> i) & 1u;
      o.require(clause_holds(q, values) == (projected[code] != 0), "projection of trans differs from the clause");
    }
  }
  if (o.pass) {
    o.detail = std::to_string(stores) + " stores exhaustively (" + std::to_string(wide) +
               " over 12 vars), 500 clauses projected";
  }
  return o;
}

Outcome bool_prime() {
  Outcome o;
  const auto report = verify_bool_prime({1000, 1});
  o.require(report.ok(), report.ok() ? "" : report.counterexamples[0].description);
  const auto& prime = builtin_ruleset(RuleSystem::BoolPrime);
  const auto& full = builtin_ruleset(RuleSystem::Bool);
  std::size_t limited = 0;
  for (const auto& csp : single_constraint_csps()) {
    const bool closed = closed_under(csp, prime);
    const bool hac = is_hyper_arc_consistent(csp);
    o.require(!closed || hac, "closed under BOOL' but not hyper-arc consistent");
    if (!is_limited(csp)) continue;
    ++limited;
    o.require(!hac || closed, "limited and hyper-arc consistent but not closed under BOOL'");
    const auto a = close(csp, full, false).result;
    const auto b = close(csp, prime, false).result;
    o.require(is_failed(a) ? is_failed(b) : is_reformulation(a, b), "closures of a limited CSP differ");
  }
  for (const auto& p : non_limited_patterns()) {
    o.require(is_hyper_arc_consistent(p) && !closed_under(p, prime), "a non-limited pattern misbehaves");
  }
  if (o.pass) {
    o.detail = std::to_string(limited) + " limited single-constraint CSPs, 4 patterns, " +
               std::to_string(report.instances) + " instances in the sweep";
  }
  return o;
}

Outcome solver() {
  Outcome o;
  const auto& rules = builtin_ruleset(RuleSystem::Bool);
  Rng rng(1);
  std::size_t bcn_count = 0, dimacs_count = 0;
  const Vocabulary names{"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n", "o", "p"};
  while (bcn_count < 100) {
    CspShape shape;
    shape.max_vars = 16;
    shape.max_constraints = 14;
    shape.empty_domain_rate = 0.01;
    shape.full_domain_rate = 0.85;
    const auto csp = parse_bcn(print_bcn(random_csp(rng, shape), names)).csp;
    const bool sat = !solutions(csp).empty();
    const auto result = solve(csp, rules);
    o.require((result.status == SolveStatus::Sat) == sat, ".bcn instance: SAT/UNSAT disagrees with the oracle");
    o.require(!result.model || satisfies(csp, *result.model), ".bcn instance: model does not verify");
    ++bcn_count;
  }
  while (dimacs_count < 100) {
    CnfProblem raw;
    raw.num_vars = 6;
    raw.clauses = random_clause_set(rng, ClauseShape{6, 6, 3});
    for (std::uint32_t k = 0; k < raw.num_vars; ++k) raw.names.set_name(Var{k}, "x" + std::to_string(k + 1));
    const auto cnf = parse_dimacs(print_dimacs(raw.clauses, raw.names, raw.num_vars));
    const auto translated = cnf_to_csp(cnf);
    if (translated.csp.size() > 16) continue;
    const bool sat = !solutions(translated.csp).empty();
    bool cnf_sat = false;
    std::vector<std::uint8_t> values(6, 0);
    for (std::uint32_t code = 0; code < 64 && !cnf_sat; ++code) {
      for (std::uint32_t i = 0; i < 6; ++i) values[i] = (code >> i) & 1u;
      cnf_sat = std::all_of(cnf.clauses.clauses().begin(), cnf.clauses.clauses().end(),
                            [&](const Clause& c) { return clause_holds(c, values); });
    }
    const auto result = solve(cnf, rules);
    o.require(sat == cnf_sat, "DIMACS translation changes satisfiability");
    o.require((result.status == SolveStatus::Sat) == cnf_sat, "DIMACS instance: SAT/UNSAT disagrees with the oracle");
    if (result.model) {
      for (std::uint32_t i = 0; i < 6; ++i) values[i] = result.model->values[i];
      o.require(std::all_of(cnf.clauses.clauses().begin(), cnf.clauses.clauses().end(),
                            [&](const Clause& c) { return clause_holds(c, values); }),
                "DIMACS instance: model does not verify");
    }
    ++dimacs_count;
  }
  const BooleanCSP example({x, y, z}, {Domain::one(), Domain::full(), Domain::full()},
                           {Constraint::conj(x, y, z), Constraint::negation(x, y)});
  const auto result = solve(example, rules);
  o.require(result.status == SolveStatus::Sat && result.model &&
                result.model->values == std::vector<bool>{true, false, false} && result.split_count == 0,
            "the worked example does not solve to x=1, y=0, z=0 without splits");
  if (o.pass) {
    o.detail = std::to_string(bcn_count) + " .bcn + " + std::to_string(dimacs_count) +
               " DIMACS instances agree with the oracle; worked example: 0 splits";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"completeness", completeness},       {"characterization", characterization},
      {"necessity", necessity},             {"failed-csp-guard", failed_guard},
      {"reduction-1", reduction1},          {"reduction-2", reduction2},
      {"translation-soundness", translation}, {"bool-prime", bool_prime},
      {"solver", solver},
  };
  const auto start = Clock::now();
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += outcome.pass ? 0 : 1;
    std::printf("%s  %zu %-22s %6.2fs  %s\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                since(t0), outcome.detail.c_str());
  }
  const double total = since(start);
  const bool fast = total < 60.0;
  std::printf("%s  total runtime %.2fs (limit 60s)\n", fast ? "PASS" : "FAIL", total);
  return failures == 0 && fast ? 0 : 1;
}
