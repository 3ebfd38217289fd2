#pragma once

// Seeded generators for the randomized verification sweeps.

#include <random>

#include "bcp/clauses.hpp"
#include "bcp/model.hpp"

namespace bcp {

using Rng = std::mt19937_64;

struct CspShape {
  int max_vars = 6;
  int max_constraints = 6;
  /// Chance that a domain is drawn from {{}, {0}, {1}, {0,1}} rather than
  /// {{0}, {1}, {0,1}}.
  double empty_domain_rate = 0.0;
  /// Chance that a domain is {0,1}; otherwise a singleton (or empty).
  double full_domain_rate = 0.5;
};

struct ClauseShape {
  int max_vars = 5;
  int max_clauses = 6;
  int max_length = 4;
};

Constraint random_constraint(Rng& rng, std::span<const Var> vars);
BooleanCSP random_csp(Rng& rng, const CspShape& shape = {});
ConstraintStore random_store(Rng& rng, int max_vars, int max_constraints, int max_literals);
Clause random_clause(Rng& rng, int num_vars, int max_length);
ClauseSet random_clause_set(Rng& rng, const ClauseShape& shape = {});

}  // namespace bcp
