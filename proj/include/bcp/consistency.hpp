#pragma once

// Hyper-arc consistency, limited CSPs, and the sweeps relating both to
// closure under the BOOL and BOOL' rules.

#include <vector>

#include "bcp/model.hpp"
#include "bcp/report.hpp"
#include "bcp/rules.hpp"

namespace bcp {

/// A value of a constraint variable that no tuple of the restricted relation
/// supports.
struct Witness {
  Constraint constraint;
  Var var;
  bool value = false;

  bool operator==(const Witness&) const = default;
};

struct ConsistencyReport {
  bool hyper_arc = true;
  bool failed = false;
  bool limited = true;
  bool closed_bool = true;
  bool closed_bool_prime = true;
  std::vector<Witness> witnesses;  // nonempty iff !hyper_arc
};

ConsistencyReport hyper_arc_consistent(const BooleanCSP& csp);
bool is_hyper_arc_consistent(const BooleanCSP& csp);

/// No AND constraint has an input domain {1} with the other input and the
/// output at {0,1}, and no OR constraint has an input domain {0} with the
/// other input and the output at {0,1}.
bool is_limited(const BooleanCSP& csp);

/// Every single-constraint CSP over fresh variables with nonempty domains:
/// 9 per binary kind and 27 per ternary kind.
std::vector<BooleanCSP> single_constraint_csps();

/// closed under `rules` <=> hyper-arc consistent, for every non-failed
/// single-constraint CSP, `options.budget` non-failed random CSPs, and their
/// closures.
VerificationReport verify_characterization(const SweepOptions& options = {},
                                           const RuleSet& rules = builtin_ruleset(RuleSystem::Bool));

/// The BOOL' statements: closed under BOOL' => hyper-arc consistent;
/// limited and hyper-arc consistent => closed under BOOL'; the four
/// non-limited patterns are hyper-arc consistent but not closed; limited
/// single-constraint CSPs close to reformulations under both systems.
VerificationReport verify_bool_prime(const SweepOptions& options = {});

/// The four single-constraint CSPs excluded by the limited condition.
std::vector<BooleanCSP> non_limited_patterns();

}  // namespace bcp
