#pragma once

// Propagation interleaved with labeling: close under a rule set, then split
// on the first {0,1} variable in declaration order, value 1 before value 0.

#include <optional>

#include "bcp/io.hpp"
#include "bcp/model.hpp"
#include "bcp/rules.hpp"

namespace bcp {

enum class SolveStatus { Sat, Unsat };

struct SolveResult {
  SolveStatus status = SolveStatus::Unsat;
  std::optional<Assignment> model;  // indexed like csp.vars()
  std::size_t propagation_steps = 0;
  std::size_t split_count = 0;
};

SolveResult solve(const BooleanCSP& csp, const RuleSet& rules);

/// Solves the translation of a clause set; the model covers the variables of
/// the CNF only.
SolveResult solve(const CnfProblem& cnf, const RuleSet& rules);

}  // namespace bcp
