#include "bcp/random.hpp"

#include <algorithm>

namespace bcp {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::vector<Var> first_vars(int n) {
  std::vector<Var> vars;
  for (int i = 0; i < n; ++i) vars.push_back(Var{static_cast<std::uint32_t>(i)});
  return vars;
}

}  // namespace

Constraint random_constraint(Rng& rng, std::span<const Var> vars) {
  if (vars.size() < 2) throw Error("a constraint needs at least two variables");
  // Ternary kinds only when three variables are available.
  const int top = vars.size() >= 3 ? 3 : 1;
  const auto kind = kAllKinds[static_cast<std::size_t>(uniform(rng, 0, top))];
  const int n = arity(kind);
  std::vector<Var> pool(vars.begin(), vars.end());
  std::shuffle(pool.begin(), pool.end(), rng);
  return Constraint(kind, std::span<const Var>(pool.data(), static_cast<std::size_t>(n)));
}

BooleanCSP random_csp(Rng& rng, const CspShape& shape) {
  const int n = uniform(rng, 2, std::max(2, shape.max_vars));
  const auto vars = first_vars(n);
  std::vector<Domain> domains;
  for (int i = 0; i < n; ++i) {
    if (chance(rng, shape.empty_domain_rate)) {
      domains.push_back(Domain::none());
    } else if (chance(rng, shape.full_domain_rate)) {
      domains.push_back(Domain::full());
    } else {
      domains.push_back(Domain::singleton(chance(rng, 0.5)));
    }
  }
  std::vector<Constraint> constraints;
  const int m = uniform(rng, 1, std::max(1, shape.max_constraints));
  for (int i = 0; i < m; ++i) {
    constraints.push_back(random_constraint(rng, vars));
  }
  return BooleanCSP(vars, domains, constraints);
}

ConstraintStore random_store(Rng& rng, int max_vars, int max_constraints, int max_literals) {
  const int n = uniform(rng, 3, std::max(3, max_vars));
  const auto vars = first_vars(n);
  ConstraintStore s;
  const int m = uniform(rng, 0, max_constraints);
  for (int i = 0; i < m; ++i) s.insert(random_constraint(rng, vars));
  const int k = uniform(rng, 0, max_literals);
  for (int i = 0; i < k; ++i) {
    s.insert(Literal{vars[static_cast<std::size_t>(uniform(rng, 0, n - 1))], chance(rng, 0.5)});
  }
  return s;
}

Clause random_clause(Rng& rng, int num_vars, int max_length) {
  const int len = uniform(rng, 1, max_length);
  std::vector<Literal> lits;
  for (int i = 0; i < len; ++i) {
    lits.push_back(Literal{Var{static_cast<std::uint32_t>(uniform(rng, 0, num_vars - 1))}, chance(rng, 0.5)});
  }
  return Clause(std::move(lits));
}

ClauseSet random_clause_set(Rng& rng, const ClauseShape& shape) {
  const int n = uniform(rng, 1, shape.max_vars);
  const int m = uniform(rng, 1, shape.max_clauses);
  ClauseSet cs;
  for (int i = 0; i < m; ++i) cs.insert(random_clause(rng, n, shape.max_length));
  return cs;
}

}  // namespace bcp
