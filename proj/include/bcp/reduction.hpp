#pragma once

// Step-by-step simulations between rule application on constraint stores and
// unit propagation on their clausal forms, plus the sweeps that exercise them.

#include <vector>

#include "bcp/clauses.hpp"
#include "bcp/report.hpp"
#include "bcp/rules.hpp"

namespace bcp {

class SimulationError : public Error {
 public:
  using Error::Error;
};

/// Unit steps taking the clausal form of `s1` to exactly the clausal form of
/// `step.after`, at most four of them. Among derivations of minimal length the
/// one returned works through the premise literals from the last role
/// position to the first, resolving before subsuming.
std::vector<UnitStep> simulate_bool_by_unit(const ConstraintStore& s1, const StoreStep& step);

struct UnitSimulation {
  ConstraintStore s1;  // translation of the clause set before the step
  ConstraintStore s2;  // translation of the clause set after the step
  std::vector<StoreStep> derivation;
  ConstraintStore redundant;  // final store minus s2
};

/// Translations of both clause sets that agree on the fresh variables of the
/// untouched clauses, and a derivation of at most three rule steps from s1 to
/// s2 plus a redundant part that semantically follows from s2.
UnitSimulation simulate_unit_by_bool(const ClauseSet& phi1, const UnitStep& step);

/// The store {constraint on fresh variables} plus the rule's premise literals.
ConstraintStore minimal_matching_store(const PropagationRule& rule);

/// Every BOOL rule on its minimal matching store, plus `options.budget`
/// random stores, each simulated by unit propagation.
VerificationReport verify_reduction1(const SweepOptions& options = {});
/// Every unit step of `options.budget` random clause sets simulated by rules.
VerificationReport verify_reduction2(const SweepOptions& options = {});

}  // namespace bcp
