#include "bcp/rules.hpp"

#include <algorithm>
#include <deque>

namespace bcp {

namespace {

using RA = RoleAssignment;
using K = ConstraintKind;

PropagationRule make(std::string name, K kind, std::vector<RA> premise, std::vector<RA> conclusion,
                     std::vector<ConstraintPattern> constraints = {}) {
  return PropagationRule{std::move(name), kind, std::move(premise), std::move(conclusion),
                         std::move(constraints)};
}

// Role positions: x = 0, y = 1, z = 2.
constexpr std::uint8_t X = 0, Y = 1, Z = 2;

std::vector<PropagationRule> shared_eq_not() {
  return {
      make("EQU 1", K::Eq, {{X, 1}}, {{Y, 1}}),
      make("EQU 2", K::Eq, {{Y, 1}}, {{X, 1}}),
      make("EQU 3", K::Eq, {{X, 0}}, {{Y, 0}}),
      make("EQU 4", K::Eq, {{Y, 0}}, {{X, 0}}),
      make("NOT 1", K::Not, {{X, 1}}, {{Y, 0}}),
      make("NOT 2", K::Not, {{X, 0}}, {{Y, 1}}),
      make("NOT 3", K::Not, {{Y, 1}}, {{X, 0}}),
      make("NOT 4", K::Not, {{Y, 0}}, {{X, 1}}),
  };
}

RuleSet make_bool() {
  RuleSet rs{RuleSystem::Bool, shared_eq_not()};
  auto more = std::vector<PropagationRule>{
      make("AND 1", K::And, {{X, 1}, {Y, 1}}, {{Z, 1}}),
      make("AND 2", K::And, {{X, 1}, {Z, 0}}, {{Y, 0}}),
      make("AND 3", K::And, {{Y, 1}, {Z, 0}}, {{X, 0}}),
      make("AND 4", K::And, {{X, 0}}, {{Z, 0}}),
      make("AND 5", K::And, {{Y, 0}}, {{Z, 0}}),
      make("AND 6", K::And, {{Z, 1}}, {{X, 1}, {Y, 1}}),
      make("OR 1", K::Or, {{X, 1}}, {{Z, 1}}),
      make("OR 2", K::Or, {{X, 0}, {Y, 0}}, {{Z, 0}}),
      make("OR 3", K::Or, {{X, 0}, {Z, 1}}, {{Y, 1}}),
      make("OR 4", K::Or, {{Y, 0}, {Z, 1}}, {{X, 1}}),
      make("OR 5", K::Or, {{Y, 1}}, {{Z, 1}}),
      make("OR 6", K::Or, {{Z, 0}}, {{X, 0}, {Y, 0}}),
  };
  rs.rules.insert(rs.rules.end(), more.begin(), more.end());
  return rs;
}

RuleSet make_bool_prime() {
  const ConstraintPattern y_eq_z{K::Eq, {Y, Z, 0}};
  const ConstraintPattern x_eq_z{K::Eq, {X, Z, 0}};
  RuleSet rs{RuleSystem::BoolPrime, shared_eq_not()};
  auto more = std::vector<PropagationRule>{
      make("AND 1'", K::And, {{X, 1}}, {}, {y_eq_z}),
      make("AND 2'", K::And, {{Y, 1}}, {}, {x_eq_z}),
      make("AND 3'", K::And, {{Z, 1}}, {{X, 1}}),
      make("AND 4", K::And, {{X, 0}}, {{Z, 0}}),
      make("AND 5", K::And, {{Y, 0}}, {{Z, 0}}),
      make("AND 6'", K::And, {{Z, 1}}, {{Y, 1}}),
      make("OR 1", K::Or, {{X, 1}}, {{Z, 1}}),
      make("OR 2'", K::Or, {{X, 0}}, {}, {y_eq_z}),
      make("OR 3'", K::Or, {{Y, 0}}, {}, {x_eq_z}),
      make("OR 4'", K::Or, {{Z, 0}}, {{X, 0}}),
      make("OR 5", K::Or, {{Y, 1}}, {{Z, 1}}),
      make("OR 6'", K::Or, {{Z, 0}}, {{Y, 0}}),
  };
  rs.rules.insert(rs.rules.end(), more.begin(), more.end());
  return rs;
}

Domain store_domain(const ConstraintStore& s, Var v) {
  Domain d = Domain::full();
  if (s.contains(pos(v))) d = d.intersect(Domain::one());
  if (s.contains(neg(v))) d = d.intersect(Domain::zero());
  return d;
}

// Solved w.r.t. the domains the store's literals induce on c's variables.
bool solved_in_store(const Constraint& c, const ConstraintStore& s) {
  std::vector<Var> vars(c.vars().begin(), c.vars().end());
  std::vector<Domain> domains;
  for (Var v : vars) domains.push_back(store_domain(s, v));
  BooleanCSP local(vars, domains, {c});
  return is_solved(c, local);
}

void apply_conclusion(const PropagationRule& rule, const Constraint& c, BooleanCSP& csp) {
  for (const auto& ra : rule.conclusion) {
    const Var v = c.var(ra.position);
    csp.set_domain(v, csp.domain(v).intersect(Domain::singleton(ra.value)));
  }
  csp.remove_constraint(c);
  if (!rule.conclusion_constraints.empty()) {
    for (const auto& p : rule.conclusion_constraints) csp.add_constraint(p.instantiate(c));
  } else if (!is_solved(c, csp)) {
    // Only the split BOOL' rules leave an unsolved constraint behind.
    csp.add_constraint(c);
  }
}

bool premise_matches(const PropagationRule& rule, const Constraint& c, const BooleanCSP& csp) {
  return std::all_of(rule.premise.begin(), rule.premise.end(), [&](const RA& ra) {
    return csp.domain(c.var(ra.position)) == Domain::singleton(ra.value);
  });
}

}  // namespace

Constraint ConstraintPattern::instantiate(const Constraint& matched) const {
  std::array<Var, 3> vars{};
  const auto n = static_cast<std::size_t>(arity(kind));
  for (std::size_t i = 0; i < n; ++i) vars[i] = matched.var(positions[i]);
  return Constraint(kind, std::span<const Var>(vars.data(), n));
}

const PropagationRule& RuleSet::at(std::string_view name) const {
  for (const auto& r : rules) {
    if (r.name == name) return r;
  }
  throw Error("no rule named '" + std::string(name) + "'");
}

RuleSet RuleSet::without(std::string_view name) const {
  RuleSet out = *this;
  auto it = std::find_if(out.rules.begin(), out.rules.end(),
                         [&](const PropagationRule& r) { return r.name == name; });
  if (it == out.rules.end()) throw Error("no rule named '" + std::string(name) + "'");
  out.rules.erase(it);
  return out;
}

std::string_view system_name(RuleSystem s) { return s == RuleSystem::Bool ? "bool" : "bool-prime"; }

RuleSystem parse_system(std::string_view name) {
  if (name == "bool" || name == "BOOL") return RuleSystem::Bool;
  if (name == "bool-prime" || name == "BOOL_PRIME" || name == "BOOL'" || name == "bool'") {
    return RuleSystem::BoolPrime;
  }
  throw Error("unknown rule system '" + std::string(name) + "'");
}

const RuleSet& builtin_ruleset(RuleSystem system) {
  static const RuleSet kBool = make_bool();
  static const RuleSet kBoolPrime = make_bool_prime();
  return system == RuleSystem::Bool ? kBool : kBoolPrime;
}

const RuleSet& builtin_ruleset(std::string_view name) { return builtin_ruleset(parse_system(name)); }

// --- Stores -------------------------------------------------------------------

std::vector<StoreStep> apply_rule_store(const PropagationRule& rule, const ConstraintStore& s) {
  std::vector<StoreStep> steps;
  for (const auto& c : s.constraints()) {
    if (c.kind() != rule.kind) continue;
    const bool match = std::all_of(rule.premise.begin(), rule.premise.end(), [&](const RA& ra) {
      return s.contains(Literal{c.var(ra.position), ra.value});
    });
    if (!match) continue;

    ConstraintStore after = s;
    after.erase(c);
    for (const auto& ra : rule.conclusion) after.insert(Literal{c.var(ra.position), ra.value});
    if (!rule.conclusion_constraints.empty()) {
      for (const auto& p : rule.conclusion_constraints) after.insert(p.instantiate(c));
    } else if (!solved_in_store(c, after)) {
      after.insert(c);
    }
    steps.push_back(StoreStep{rule.name, c, s, std::move(after)});
  }
  return steps;
}

std::vector<StoreStep> derive_store(const ConstraintStore& s, const RuleSet& rs,
                                    std::size_t max_steps) {
  std::vector<StoreStep> trace;
  ConstraintStore current = s;
  while (trace.size() < max_steps) {
    bool progressed = false;
    for (const auto& rule : rs.rules) {
      for (auto& step : apply_rule_store(rule, current)) {
        if (step.after == step.before) continue;
        current = step.after;
        trace.push_back(std::move(step));
        progressed = true;
        break;
      }
      if (progressed) break;
    }
    if (!progressed) break;
  }
  return trace;
}

// --- CSPs ---------------------------------------------------------------------

std::vector<CspStep> apply_rule_csp(const PropagationRule& rule, const BooleanCSP& csp) {
  std::vector<CspStep> steps;
  for (const auto& c : csp.constraints()) {
    if (c.kind() != rule.kind || !premise_matches(rule, c, csp)) continue;
    BooleanCSP after = csp;
    apply_conclusion(rule, c, after);
    const bool relevant = !is_reformulation(csp, after);
    steps.push_back(CspStep{rule.name, c, csp, std::move(after), relevant});
  }
  return steps;
}

bool closed_under(const BooleanCSP& csp, const PropagationRule& rule) {
  for (const auto& step : apply_rule_csp(rule, csp)) {
    if (step.relevant) return false;
  }
  return true;
}

bool closed_under(const BooleanCSP& csp, const RuleSet& rs) {
  return std::all_of(rs.rules.begin(), rs.rules.end(),
                     [&](const PropagationRule& r) { return closed_under(csp, r); });
}

Closure close(const BooleanCSP& csp, const RuleSet& rs, bool keep_trace) {
  Closure out{csp, {}, 0};
  BooleanCSP& current = out.result;

  std::deque<Constraint> queue(current.constraints().begin(), current.constraints().end());
  auto enqueue = [&queue](const Constraint& c) {
    if (std::find(queue.begin(), queue.end(), c) == queue.end()) queue.push_back(c);
  };

  while (!queue.empty()) {
    const Constraint c = queue.front();
    queue.pop_front();
    if (!current.contains(c)) continue;

    for (const auto& rule : rs.rules) {
      if (rule.kind != c.kind() || !premise_matches(rule, c, current)) continue;
      BooleanCSP after = current;
      apply_conclusion(rule, c, after);
      if (is_reformulation(current, after)) continue;

      std::vector<Var> changed;
      for (std::size_t i = 0; i < current.size(); ++i) {
        if (current.domains()[i] != after.domains()[i]) changed.push_back(current.vars()[i]);
      }
      std::vector<Constraint> added;
      for (const auto& k : after.constraints()) {
        if (!current.contains(k)) added.push_back(k);
      }

      ++out.steps;
      if (keep_trace) out.trace.push_back(CspStep{rule.name, c, current, after, true});
      current = std::move(after);

      for (const auto& k : current.constraints()) {
        const bool touched = std::any_of(changed.begin(), changed.end(),
                                         [&](Var v) { return k.mentions(v); });
        if (touched) enqueue(k);
      }
      for (const auto& k : added) enqueue(k);
      if (current.contains(c)) enqueue(c);
      break;
    }
  }
  return out;
}

// --- Trace text ----------------------------------------------------------------

std::string format_step(const CspStep& step, const Vocabulary& names) {
  std::vector<std::string> parts;
  const auto& before = step.before;
  const auto& after = step.after;
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (before.domains()[i] != after.domains()[i]) {
      parts.push_back(names.name(before.vars()[i]) + " " + to_string(before.domains()[i]) + "->" +
                      to_string(after.domains()[i]));
    }
  }
  for (const auto& c : before.constraints()) {
    if (!after.contains(c)) parts.push_back("-" + to_string(c, names));
  }
  for (const auto& c : after.constraints()) {
    if (!before.contains(c)) parts.push_back("+" + to_string(c, names));
  }
  std::string delta;
  for (const auto& p : parts) delta += (delta.empty() ? "" : ", ") + p;
  return step.rule + " | " + to_string(step.matched, names) + " | " + delta;
}

std::string format_step(const StoreStep& step, const Vocabulary& names) {
  std::vector<std::string> parts;
  const auto removed = step.before.minus(step.after);
  const auto added = step.after.minus(step.before);
  for (const auto& c : removed.constraints()) parts.push_back("-" + to_string(c, names));
  for (auto l : removed.literals()) parts.push_back("-" + to_string(l, names));
  for (const auto& c : added.constraints()) parts.push_back("+" + to_string(c, names));
  for (auto l : added.literals()) parts.push_back("+" + to_string(l, names));
  std::string delta;
  for (const auto& p : parts) delta += (delta.empty() ? "" : ", ") + p;
  return step.rule + " | " + to_string(step.matched, names) + " | " + delta;
}

}  // namespace bcp
