#include "bcp/reduction.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "bcp/random.hpp"

namespace bcp {

namespace {

const PropagationRule& find_rule(const std::string& name) {
  for (auto system : {RuleSystem::Bool, RuleSystem::BoolPrime}) {
    for (const auto& r : builtin_ruleset(system).rules) {
      if (r.name == name) return r;
    }
  }
  throw SimulationError("unknown rule '" + name + "'");
}

struct Candidate {
  UnitStep step;
  std::size_t unit_rank;
};

class UnitSearch {
 public:
  UnitSearch(ClauseSet goal, std::vector<Literal> preferred)
      : goal_(std::move(goal)), preferred_(std::move(preferred)) {}

  bool run(const ClauseSet& current, int depth_left, std::vector<UnitStep>& path) const {
    if (current == goal_) return true;
    if (depth_left == 0) return false;
    for (auto& cand : candidates(current)) {
      path.push_back(cand.step);
      if (run(cand.step.result, depth_left - 1, path)) return true;
      path.pop_back();
    }
    return false;
  }

 private:
  // A clause of the goal that gets rewritten or deleted never comes back in
  // the same form, so only clauses outside the goal are worth touching.
  std::vector<Candidate> candidates(const ClauseSet& current) const {
    std::vector<Candidate> out;
    for (auto& step : unit_step(current)) {
      if (goal_.contains(step.target)) continue;
      auto it = std::find(preferred_.begin(), preferred_.end(), step.unit);
      const auto rank = static_cast<std::size_t>(it - preferred_.begin());
      out.push_back(Candidate{std::move(step), rank});
    }
    std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
      if (a.unit_rank != b.unit_rank) return a.unit_rank < b.unit_rank;
      return a.step.op == UnitOp::Resolve && b.step.op == UnitOp::Subsume;
    });
    return out;
  }

  ClauseSet goal_;
  std::vector<Literal> preferred_;
};

constexpr int kMaxUnitSteps = 4;
constexpr std::size_t kMaxRuleSteps = 3;

}  // namespace

std::vector<UnitStep> simulate_bool_by_unit(const ConstraintStore& s1, const StoreStep& step) {
  if (step.before != s1) throw SimulationError("store step does not start from the given store");
  const auto& rule = find_rule(step.rule);

  // Premise literals, last role position first.
  std::vector<Literal> preferred;
  for (auto it = rule.premise.rbegin(); it != rule.premise.rend(); ++it) {
    preferred.push_back(Literal{step.matched.var(it->position), it->value});
  }

  const ClauseSet start = constraints_to_clauses(s1);
  const ClauseSet goal = constraints_to_clauses(step.after);
  const UnitSearch search(goal, preferred);
  for (int depth = 0; depth <= kMaxUnitSteps; ++depth) {
    std::vector<UnitStep> path;
    if (search.run(start, depth, path)) return path;
  }
  throw SimulationError("no unit derivation of length <= 4 for rule " + step.rule);
}

UnitSimulation simulate_unit_by_bool(const ClauseSet& phi1, const UnitStep& step) {
  if (phi1.has_empty_clause()) throw SimulationError("the empty clause has no translation");
  if (apply_unit(phi1, step.op, step.unit, step.target) != step.result) {
    throw SimulationError("unit step result does not match the clause set");
  }

  const auto vars = phi1.vars();
  FreshVarSource fresh(Var{vars.empty() ? 0 : vars.back().id + 1});
  const auto& target = step.target;

  // Degenerate case: resolving complementary unit clauses. The pair of
  // literals stays in the store and stands for the empty clause.
  if (target.is_unit()) {
    const auto s1 = trans_clauses(phi1, fresh);
    return UnitSimulation{s1, s1, {}, {}};
  }

  // The literal of the target that the step acts on is peeled first.
  const Literal lead = step.op == UnitOp::Resolve ? ~step.unit : step.unit;
  const Clause rest = target.without(lead);
  Var z{}, v{}, y{};
  ConstraintStore rest_part;
  std::map<Clause, ConstraintStore> pieces;
  for (const auto& c : phi1.clauses()) {
    if (c != target) {
      pieces.emplace(c, trans_clause(c, fresh));
      continue;
    }
    z = fresh.next();
    ConstraintStore piece({}, {pos(z)});
    if (lead.positive) {
      y = fresh.next();
      piece.insert(Constraint::disj(lead.var, y, z));
    } else {
      v = fresh.next();
      y = fresh.next();
      piece.insert(Constraint::negation(lead.var, v));
      piece.insert(Constraint::disj(v, y, z));
    }
    rest_part = trans_clause_eq(rest, y, fresh);
    piece.merge(rest_part);
    pieces.emplace(c, piece);
  }

  UnitSimulation sim;
  for (const auto& [clause, piece] : pieces) sim.s1.merge(piece);

  ConstraintStore current = sim.s1;
  auto fire = [&](const std::string& rule_name, const Constraint& c) {
    for (auto& s : apply_rule_store(builtin_ruleset(RuleSystem::Bool).at(rule_name), current)) {
      if (s.matched == c) {
        current = s.after;
        sim.derivation.push_back(std::move(s));
        return;
      }
    }
    throw SimulationError(rule_name + " does not apply during the simulation");
  };

  const Var x = lead.var;
  const Var input = lead.positive ? x : v;
  if (step.op == UnitOp::Resolve) {
    if (!lead.positive) fire("NOT 1", Constraint::negation(x, v));
    fire("OR 3", Constraint::disj(input, y, z));
    if (rest.is_unit()) {
      const Literal w = rest.literals()[0];
      if (w.positive) fire("EQU 2", Constraint::eq(w.var, y));
      else fire("NOT 3", Constraint::negation(w.var, y));
    }
  } else {
    if (!lead.positive) fire("NOT 2", Constraint::negation(x, v));
    fire("OR 1", Constraint::disj(input, y, z));
  }

  for (const auto& c : step.result.clauses()) {
    if (auto it = pieces.find(c); it != pieces.end() && c != target) {
      sim.s2.merge(it->second);
    } else if (c == rest) {
      if (rest.is_unit()) {
        sim.s2.insert(rest.literals()[0]);
      } else {
        sim.s2.insert(pos(y));
        sim.s2.merge(rest_part);
      }
    } else {
      throw SimulationError("clause of the result has no translation");
    }
  }

  if (sim.derivation.size() > kMaxRuleSteps) throw SimulationError("more than three rule steps");
  if (!current.includes(sim.s2)) throw SimulationError("derivation does not reach the translation");
  sim.redundant = current.minus(sim.s2);
  if (!semantically_follows(sim.redundant, sim.s2)) {
    throw SimulationError("redundant part does not follow from the translation");
  }
  return sim;
}

ConstraintStore minimal_matching_store(const PropagationRule& rule) {
  std::vector<Var> vars;
  for (int i = 0; i < arity(rule.kind); ++i) vars.push_back(Var{static_cast<std::uint32_t>(i)});
  const Constraint c(rule.kind, vars);
  std::vector<Literal> literals;
  for (const auto& ra : rule.premise) literals.push_back(Literal{c.var(ra.position), ra.value});
  return ConstraintStore({c}, literals);
}

namespace {

// Replays the unit steps and checks they land exactly on the target.
std::string check_unit_derivation(const ConstraintStore& s1, const StoreStep& step,
                                  const std::vector<UnitStep>& path) {
  if (path.size() > static_cast<std::size_t>(kMaxUnitSteps)) return "more than four unit steps";
  ClauseSet current = constraints_to_clauses(s1);
  for (const auto& u : path) {
    try {
      current = apply_unit(current, u.op, u.unit, u.target);
    } catch (const Error& e) {
      return e.what();
    }
  }
  if (current != constraints_to_clauses(step.after)) return "unit derivation ends elsewhere";
  return {};
}

void simulate_and_record(const ConstraintStore& s1, const StoreStep& step, VerificationReport& report) {
  ++report.instances;
  std::string failure;
  try {
    failure = check_unit_derivation(s1, step, simulate_bool_by_unit(s1, step));
  } catch (const Error& e) {
    failure = e.what();
  }
  if (!failure.empty()) {
    report.counterexamples.push_back(
        {step.rule + " on " + to_string(s1, Vocabulary{"x", "y", "z", "u", "v"}) + ": " + failure,
         store_to_csp(s1)});
  }
}

// No two constraints share more than one variable.
bool loosely_coupled(const ConstraintStore& s) {
  const auto cs = s.constraints();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      int shared = 0;
      for (Var v : cs[i].vars()) shared += cs[j].mentions(v) ? 1 : 0;
      if (shared > 1) return false;
    }
  }
  return true;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

VerificationReport verify_reduction1(const SweepOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report{"reduction1", 0, {}, 0.0};
  const auto& rs = builtin_ruleset(RuleSystem::Bool);
  for (const auto& rule : rs.rules) {
    const auto s1 = minimal_matching_store(rule);
    for (const auto& step : apply_rule_store(rule, s1)) simulate_and_record(s1, step, report);
  }
  Rng rng(options.seed);
  for (std::size_t produced = 0; produced < options.budget;) {
    const auto s1 = random_store(rng, 5, 3, 4);
    if (!loosely_coupled(s1)) continue;
    ++produced;
    for (const auto& rule : rs.rules) {
      for (const auto& step : apply_rule_store(rule, s1)) simulate_and_record(s1, step, report);
    }
  }
  report.seconds = seconds_since(start);
  return report;
}

VerificationReport verify_reduction2(const SweepOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report{"reduction2", 0, {}, 0.0};
  Rng rng(options.seed);
  const Vocabulary names{"a", "b", "c", "d", "e"};
  for (std::size_t i = 0; i < options.budget; ++i) {
    const auto phi1 = random_clause_set(rng);
    for (const auto& step : unit_step(phi1)) {
      ++report.instances;
      try {
        const auto sim = simulate_unit_by_bool(phi1, step);
        // Independent replay of the derivation.
        ConstraintStore current = sim.s1;
        for (const auto& s : sim.derivation) {
          if (s.before != current) throw SimulationError("derivation is not contiguous");
          current = s.after;
        }
        ConstraintStore expected = sim.s2;
        expected.merge(sim.redundant);
        if (current != expected) throw SimulationError("derivation does not end at s2 plus redundant part");
      } catch (const Error& e) {
        report.counterexamples.push_back(
            {format_step(step, names) + " on " + to_string(phi1, names) + ": " + e.what(), std::nullopt});
      }
    }
  }
  report.seconds = seconds_since(start);
  return report;
}

}  // namespace bcp
