#include "bcp/rulegen.hpp"

#include <algorithm>
#include <bit>
#include <chrono>

namespace bcp {

CandidateRule CandidateRule::from(std::span<const RoleAssignment> premise,
                                  std::span<const RoleAssignment> conclusion) {
  CandidateRule r;
  for (const auto& ra : premise) {
    r.premise_mask |= 1u << ra.position;
    if (ra.value) r.premise_values |= 1u << ra.position;
  }
  for (const auto& ra : conclusion) {
    r.conclusion_mask |= 1u << ra.position;
    if (ra.value) r.conclusion_values |= 1u << ra.position;
  }
  return r;
}

bool CandidateRule::well_formed() const {
  return premise_mask != 0 && conclusion_mask != 0 && (premise_mask & conclusion_mask) == 0 &&
         (premise_values & ~premise_mask) == 0 && (conclusion_values & ~conclusion_mask) == 0;
}

bool is_valid(const CandidateRule& r, const ConstraintTable& t) {
  return std::all_of(t.rows.begin(), t.rows.end(), [&](std::uint32_t row) {
    return (row & r.premise_mask) != r.premise_values ||
           (row & r.conclusion_mask) == r.conclusion_values;
  });
}

bool is_feasible(const CandidateRule& r, const ConstraintTable& t) {
  return std::any_of(t.rows.begin(), t.rows.end(),
                     [&](std::uint32_t row) { return (row & r.premise_mask) == r.premise_values; });
}

bool implies(const CandidateRule& a, const CandidateRule& b) {
  const bool premise_extends =
      (a.premise_mask & ~b.premise_mask) == 0 && (b.premise_values & a.premise_mask) == a.premise_values;
  const bool conclusion_extends = (b.conclusion_mask & ~a.conclusion_mask) == 0 &&
                                  (a.conclusion_values & b.conclusion_mask) == b.conclusion_values;
  return premise_extends && conclusion_extends;
}

namespace {

// Validity is preserved by strengthening the premise or weakening the
// conclusion, so a valid rule is properly implied by some valid rule iff one
// of its one-element neighbours (drop a premise entry, add a conclusion entry)
// is valid.
bool has_stronger_valid_neighbour(const CandidateRule& r, const ConstraintTable& t) {
  const int n = t.arity;
  if (std::popcount(r.premise_mask) >= 2) {
    for (int p = 0; p < n; ++p) {
      const std::uint32_t bit = 1u << p;
      if (!(r.premise_mask & bit)) continue;
      CandidateRule weaker = r;
      weaker.premise_mask &= ~bit;
      weaker.premise_values &= ~bit;
      if (is_valid(weaker, t)) return true;
    }
  }
  for (int p = 0; p < n; ++p) {
    const std::uint32_t bit = 1u << p;
    if ((r.premise_mask | r.conclusion_mask) & bit) continue;
    for (std::uint32_t v : {0u, bit}) {
      CandidateRule stronger = r;
      stronger.conclusion_mask |= bit;
      stronger.conclusion_values |= v;
      if (is_valid(stronger, t)) return true;
    }
  }
  return false;
}

}  // namespace

std::vector<CandidateRule> minimal_rules(const ConstraintTable& t) {
  if (t.arity < 1 || t.arity > 20) throw Error("rule generation needs arity between 1 and 20");
  // Each position is one of: unused, premise 0/1, conclusion 0/1.
  std::vector<int> state(static_cast<std::size_t>(t.arity), 0);
  std::vector<CandidateRule> out;
  while (true) {
    CandidateRule r;
    for (int p = 0; p < t.arity; ++p) {
      const std::uint32_t bit = 1u << p;
      switch (state[static_cast<std::size_t>(p)]) {
        case 1: r.premise_mask |= bit; break;
        case 2: r.premise_mask |= bit; r.premise_values |= bit; break;
        case 3: r.conclusion_mask |= bit; break;
        case 4: r.conclusion_mask |= bit; r.conclusion_values |= bit; break;
        default: break;
      }
    }
    if (r.well_formed() && is_feasible(r, t) && is_valid(r, t) &&
        !has_stronger_valid_neighbour(r, t)) {
      out.push_back(r);
    }
    std::size_t i = 0;
    while (i < state.size() && ++state[i] == 5) state[i++] = 0;
    if (i == state.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool check_complete(std::span<const CandidateRule> rules, const ConstraintTable& t) {
  std::vector<CandidateRule> given(rules.begin(), rules.end());
  std::sort(given.begin(), given.end());
  given.erase(std::unique(given.begin(), given.end()), given.end());
  return given == minimal_rules(t);
}

std::optional<CandidateRule> to_candidate(const PropagationRule& rule) {
  if (!rule.conclusion_constraints.empty()) return std::nullopt;
  return CandidateRule::from(rule.premise, rule.conclusion);
}

std::vector<NamedRule> generate_rules(ConstraintKind kind) {
  const auto generated = minimal_rules(truth_table(kind));
  std::vector<NamedRule> named;
  std::vector<bool> used(generated.size(), false);
  for (const auto& rule : builtin_ruleset(RuleSystem::Bool).rules) {
    if (rule.kind != kind) continue;
    const auto cand = to_candidate(rule);
    for (std::size_t i = 0; i < generated.size(); ++i) {
      if (!used[i] && cand && *cand == generated[i]) {
        named.push_back(NamedRule{rule.name, kind, generated[i]});
        used[i] = true;
      }
    }
  }
  for (std::size_t i = 0; i < generated.size(); ++i) {
    if (!used[i]) named.push_back(NamedRule{std::string(rule_prefix(kind)) + " ?", kind, generated[i]});
  }
  return named;
}

namespace {

std::string role_name(int arity, int position) {
  if (arity <= 3) return std::string(1, "xyz"[position]);
  return "p" + std::to_string(position);
}

std::string assignments_text(int arity, std::uint32_t mask, std::uint32_t values) {
  std::string out;
  for (int p = 0; p < arity; ++p) {
    if (!(mask & (1u << p))) continue;
    if (!out.empty()) out += ", ";
    out += role_name(arity, p) + " = " + ((values >> p) & 1u ? "1" : "0");
  }
  return out;
}

std::string connective_text(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::Eq: return "x = y";
    case ConstraintKind::Not: return "~x = y";
    case ConstraintKind::And: return "x & y = z";
    case ConstraintKind::Or: return "x | y = z";
  }
  return "?";
}

std::string padded(std::string name) {
  name.resize(std::max<std::size_t>(name.size() + 1, 8), ' ');
  return name;
}

}  // namespace

std::string format_rule(const NamedRule& r) {
  const int n = arity(r.kind);
  return padded(r.name) + connective_text(r.kind) + ", " +
         assignments_text(n, r.rule.premise_mask, r.rule.premise_values) + " -> " +
         assignments_text(n, r.rule.conclusion_mask, r.rule.conclusion_values);
}

std::string format_rule(const PropagationRule& r) {
  const int n = arity(r.kind);
  const auto c = CandidateRule::from(r.premise, r.conclusion);
  std::string conclusion = assignments_text(n, c.conclusion_mask, c.conclusion_values);
  for (const auto& p : r.conclusion_constraints) {
    if (!conclusion.empty()) conclusion += ", ";
    conclusion += role_name(n, p.positions[0]) + " = " + role_name(n, p.positions[1]);
  }
  return padded(r.name) + connective_text(r.kind) + ", " +
         assignments_text(n, c.premise_mask, c.premise_values) + " -> " + conclusion;
}

VerificationReport verify_completeness() {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report{"completeness", 0, {}, 0.0};
  std::size_t total = 0;
  for (auto kind : kAllKinds) {
    ++report.instances;
    std::vector<CandidateRule> table_rules;
    for (const auto& rule : builtin_ruleset(RuleSystem::Bool).rules) {
      if (rule.kind == kind) table_rules.push_back(*to_candidate(rule));
    }
    const auto generated = generate_rules(kind);
    total += generated.size();
    if (!check_complete(table_rules, truth_table(kind))) {
      report.counterexamples.push_back(
          {std::string(keyword(kind)) + ": built-in rules differ from the generated minimal rules",
           std::nullopt});
    }
    for (const auto& g : generated) {
      if (g.name.ends_with("?")) {
        report.counterexamples.push_back({"unmatched generated rule: " + format_rule(g), std::nullopt});
      }
    }
  }
  if (total != 20) {
    report.counterexamples.push_back(
        {"expected 20 generated rules, got " + std::to_string(total), std::nullopt});
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace bcp
