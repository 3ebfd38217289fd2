#pragma once

// Propagation rules for the four connectives, the BOOL and BOOL' rule
// tables, and their application to constraint stores and to CSPs.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bcp/model.hpp"
#include "bcp/vocabulary.hpp"

namespace bcp {

struct RoleAssignment {
  std::uint8_t position = 0;
  bool value = false;

  auto operator<=>(const RoleAssignment&) const = default;
};

/// A constraint over role positions of the matched constraint, e.g. "y = z"
/// is {Eq, {1, 2}} when instantiated against x & y = z.
struct ConstraintPattern {
  ConstraintKind kind = ConstraintKind::Eq;
  std::array<std::uint8_t, 3> positions{};

  Constraint instantiate(const Constraint& matched) const;
  bool operator==(const ConstraintPattern&) const = default;
};

/// X = s -> Y = t for one connective, optionally with constraint conclusions.
struct PropagationRule {
  std::string name;
  ConstraintKind kind = ConstraintKind::Eq;
  std::vector<RoleAssignment> premise;
  std::vector<RoleAssignment> conclusion;
  std::vector<ConstraintPattern> conclusion_constraints;
};

enum class RuleSystem { Bool, BoolPrime };

struct RuleSet {
  RuleSystem system = RuleSystem::Bool;
  std::vector<PropagationRule> rules;

  const PropagationRule& at(std::string_view name) const;
  /// Copy with the named rule removed; throws if absent.
  RuleSet without(std::string_view name) const;
};

std::string_view system_name(RuleSystem s);  // "bool", "bool-prime"
RuleSystem parse_system(std::string_view name);

const RuleSet& builtin_ruleset(RuleSystem system);
/// Accepts "bool"/"BOOL" and "bool-prime"/"BOOL_PRIME"/"BOOL'".
const RuleSet& builtin_ruleset(std::string_view name);

// --- Stores -------------------------------------------------------------------

struct StoreStep {
  std::string rule;
  Constraint matched;
  ConstraintStore before;
  ConstraintStore after;
};

/// One step per constraint of the rule's kind whose premise literals are all
/// in the store, in canonical constraint order. The matched constraint is
/// replaced by the conclusion; premise literals stay.
std::vector<StoreStep> apply_rule_store(const PropagationRule& rule, const ConstraintStore& s);

/// Deterministic derivation: at each step the lowest-index rule, then the
/// lowest matched constraint, among steps that change the store.
std::vector<StoreStep> derive_store(const ConstraintStore& s, const RuleSet& rs,
                                    std::size_t max_steps = 10'000);

// --- CSPs ---------------------------------------------------------------------

struct CspStep {
  std::string rule;
  Constraint matched;
  BooleanCSP before;
  BooleanCSP after;
  bool relevant = false;
};

/// One step per constraint of the rule's kind whose premise positions have
/// exactly the premise singletons as domains.
std::vector<CspStep> apply_rule_csp(const PropagationRule& rule, const BooleanCSP& csp);
bool closed_under(const BooleanCSP& csp, const PropagationRule& rule);
bool closed_under(const BooleanCSP& csp, const RuleSet& rs);

struct Closure {
  BooleanCSP result;
  std::vector<CspStep> trace;  // empty unless requested
  std::size_t steps = 0;
};

/// Applies relevant rule applications until the CSP is closed under `rs`.
/// Work-queue schedule seeded with all constraints in canonical order.
Closure close(const BooleanCSP& csp, const RuleSet& rs, bool keep_trace = true);

/// `<rule> | <matched constraint> | <delta>`
std::string format_step(const CspStep& step, const Vocabulary& names);
std::string format_step(const StoreStep& step, const Vocabulary& names);

}  // namespace bcp
