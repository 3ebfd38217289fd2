#pragma once

// Enumerates valid, feasible and minimal rules X = s -> Y = t for a finite
// Boolean relation, and checks rule sets against the generated ones.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bcp/model.hpp"
#include "bcp/report.hpp"
#include "bcp/rules.hpp"

namespace bcp {

/// Premise and conclusion as (position mask, value bits) pairs. Bits outside
/// a mask are zero.
struct CandidateRule {
  std::uint32_t premise_mask = 0;
  std::uint32_t premise_values = 0;
  std::uint32_t conclusion_mask = 0;
  std::uint32_t conclusion_values = 0;

  static CandidateRule from(std::span<const RoleAssignment> premise,
                            std::span<const RoleAssignment> conclusion);
  /// Well-formed: disjoint, nonempty masks.
  bool well_formed() const;

  auto operator<=>(const CandidateRule&) const = default;
};

bool is_valid(const CandidateRule& r, const ConstraintTable& t);
bool is_feasible(const CandidateRule& r, const ConstraintTable& t);
/// a implies b: b's premise extends a's and a's conclusion extends b's.
bool implies(const CandidateRule& a, const CandidateRule& b);

/// All valid, feasible rules not implied by any other valid rule, sorted.
std::vector<CandidateRule> minimal_rules(const ConstraintTable& t);
bool check_complete(std::span<const CandidateRule> rules, const ConstraintTable& t);

/// nullopt for rules with constraint conclusions.
std::optional<CandidateRule> to_candidate(const PropagationRule& rule);

struct NamedRule {
  std::string name;  // matched BOOL rule name, or "<KIND> ?" when unmatched
  ConstraintKind kind;
  CandidateRule rule;
};

/// minimal_rules of the connective's truth table, named after the BOOL rule
/// with identical structure, in BOOL order (unmatched rules last).
std::vector<NamedRule> generate_rules(ConstraintKind kind);

/// Table-style text, e.g. "AND 6   x & y = z, z = 1 -> x = 1, y = 1".
std::string format_rule(const NamedRule& r);
std::string format_rule(const PropagationRule& r);

/// Regenerates the rules of all four connectives and compares them with the
/// built-in BOOL table.
VerificationReport verify_completeness();

}  // namespace bcp
