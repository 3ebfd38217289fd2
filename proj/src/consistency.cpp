#include "bcp/consistency.hpp"

#include <chrono>

#include "bcp/random.hpp"
#include "bcp/vocabulary.hpp"

namespace bcp {

ConsistencyReport hyper_arc_consistent(const BooleanCSP& csp) {
  ConsistencyReport report;
  for (const auto& c : csp.constraints()) {
    const auto rows = restricted_relation(c, csp);
    for (int i = 0; i < c.arity(); ++i) {
      const Var v = c.var(i);
      for (bool value : {false, true}) {
        if (!csp.domain(v).contains(value)) continue;
        const bool supported = std::any_of(rows.begin(), rows.end(), [&](std::uint32_t row) {
          return static_cast<bool>((row >> i) & 1u) == value;
        });
        if (!supported) report.witnesses.push_back(Witness{c, v, value});
      }
    }
  }
  report.hyper_arc = report.witnesses.empty();
  report.failed = is_failed(csp);
  report.limited = is_limited(csp);
  report.closed_bool = closed_under(csp, builtin_ruleset(RuleSystem::Bool));
  report.closed_bool_prime = closed_under(csp, builtin_ruleset(RuleSystem::BoolPrime));
  return report;
}

bool is_hyper_arc_consistent(const BooleanCSP& csp) {
  for (const auto& c : csp.constraints()) {
    const auto rows = restricted_relation(c, csp);
    for (int i = 0; i < c.arity(); ++i) {
      std::uint8_t seen = 0;
      for (auto row : rows) seen |= static_cast<std::uint8_t>(1u << ((row >> i) & 1u));
      if (!csp.domain(c.var(i)).subset_of(Domain::from_bits(seen))) return false;
    }
  }
  return true;
}

bool is_limited(const BooleanCSP& csp) {
  for (const auto& c : csp.constraints()) {
    if (c.kind() != ConstraintKind::And && c.kind() != ConstraintKind::Or) continue;
    const Domain fixed = c.kind() == ConstraintKind::And ? Domain::one() : Domain::zero();
    const Domain dx = csp.domain(c.var(0));
    const Domain dy = csp.domain(c.var(1));
    const Domain dz = csp.domain(c.var(2));
    if (!dz.is_full()) continue;
    if ((dx == fixed && dy.is_full()) || (dx.is_full() && dy == fixed)) return false;
  }
  return true;
}

std::vector<BooleanCSP> single_constraint_csps() {
  const std::array<Domain, 3> nonempty = {Domain::zero(), Domain::one(), Domain::full()};
  std::vector<BooleanCSP> out;
  for (auto kind : kAllKinds) {
    const int n = arity(kind);
    std::vector<Var> vars;
    for (int i = 0; i < n; ++i) vars.push_back(Var{static_cast<std::uint32_t>(i)});
    const int combos = n == 2 ? 9 : 27;
    for (int code = 0; code < combos; ++code) {
      std::vector<Domain> domains;
      for (int i = 0, rest = code; i < n; ++i, rest /= 3) domains.push_back(nonempty[static_cast<std::size_t>(rest % 3)]);
      out.emplace_back(vars, domains, std::vector<Constraint>{Constraint(kind, vars)});
    }
  }
  return out;
}

std::vector<BooleanCSP> non_limited_patterns() {
  const std::vector<Var> vars = {Var{0}, Var{1}, Var{2}};
  const auto F = Domain::full();
  return {
      BooleanCSP(vars, {Domain::one(), F, F}, {Constraint::conj(vars[0], vars[1], vars[2])}),
      BooleanCSP(vars, {F, Domain::one(), F}, {Constraint::conj(vars[0], vars[1], vars[2])}),
      BooleanCSP(vars, {Domain::zero(), F, F}, {Constraint::disj(vars[0], vars[1], vars[2])}),
      BooleanCSP(vars, {F, Domain::zero(), F}, {Constraint::disj(vars[0], vars[1], vars[2])}),
  };
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const Vocabulary& sweep_names() {
  static const Vocabulary names{"x", "y", "z", "u", "v", "w"};
  return names;
}

std::string describe(const BooleanCSP& csp) {
  std::string out = "<";
  for (std::size_t i = 0; i < csp.constraints().size(); ++i) {
    out += (i ? ", " : "") + to_string(csp.constraints()[i], sweep_names());
  }
  out += ";";
  for (std::size_t i = 0; i < csp.size(); ++i) {
    out += (i ? ", " : " ") + sweep_names().name(csp.vars()[i]) + " in " + to_string(csp.domains()[i]);
  }
  return out + ">";
}

// Draws non-failed random CSPs until `budget` have been produced.
template <typename Visit>
void random_sweep(const SweepOptions& options, Visit&& visit) {
  Rng rng(options.seed);
  CspShape shape;
  shape.empty_domain_rate = 0.05;
  std::size_t produced = 0;
  while (produced < options.budget) {
    auto csp = random_csp(rng, shape);
    if (is_failed(csp)) continue;
    ++produced;
    visit(csp);
  }
}

}  // namespace

VerificationReport verify_characterization(const SweepOptions& options, const RuleSet& rules) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report{"characterization", 0, {}, 0.0};
  auto check = [&](const BooleanCSP& csp) {
    if (is_failed(csp)) return;
    ++report.instances;
    const bool closed = closed_under(csp, rules);
    const bool hac = is_hyper_arc_consistent(csp);
    if (closed != hac) {
      report.counterexamples.push_back(
          {describe(csp) + (closed ? " is closed but not hyper-arc consistent"
                                   : " is hyper-arc consistent but not closed"),
           csp});
    }
  };
  for (const auto& csp : single_constraint_csps()) check(csp);
  random_sweep(options, [&](const BooleanCSP& csp) {
    check(csp);
    check(close(csp, rules, false).result);
  });
  report.seconds = seconds_since(start);
  return report;
}

VerificationReport verify_bool_prime(const SweepOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report{"bool-prime", 0, {}, 0.0};
  const auto& bool_rules = builtin_ruleset(RuleSystem::Bool);
  const auto& prime_rules = builtin_ruleset(RuleSystem::BoolPrime);
  auto fail = [&](const BooleanCSP& csp, const std::string& what) {
    report.counterexamples.push_back({describe(csp) + ": " + what, csp});
  };

  auto check = [&](const BooleanCSP& csp) {
    if (is_failed(csp)) return;
    ++report.instances;
    const bool closed = closed_under(csp, prime_rules);
    const bool hac = is_hyper_arc_consistent(csp);
    if (closed && !hac) fail(csp, "closed under BOOL' but not hyper-arc consistent");
    if (is_limited(csp) && hac && !closed) fail(csp, "limited and hyper-arc consistent but not closed under BOOL'");
  };

  // Failed closures only need to agree on failing.
  auto closures_agree = [](const BooleanCSP& by_bool, const BooleanCSP& by_prime) {
    if (is_failed(by_bool) || is_failed(by_prime)) return is_failed(by_bool) && is_failed(by_prime);
    return is_reformulation(by_bool, by_prime);
  };

  // Closures of a limited CSP under both systems agree up to solved
  // constraints whenever the BOOL closure is itself limited.
  auto check_closures = [&](const BooleanCSP& csp) {
    const auto by_bool = close(csp, bool_rules, false).result;
    const auto by_prime = close(csp, prime_rules, false).result;
    if ((is_failed(by_bool) || is_limited(by_bool)) && !closures_agree(by_bool, by_prime)) {
      fail(csp, "BOOL and BOOL' closures are not reformulations of each other");
    }
    return std::pair{by_bool, by_prime};
  };

  for (const auto& csp : single_constraint_csps()) {
    check(csp);
    if (is_limited(csp)) {
      const auto by_bool = close(csp, bool_rules, false).result;
      const auto by_prime = close(csp, prime_rules, false).result;
      if (!closures_agree(by_bool, by_prime)) {
        fail(csp, "limited, but the BOOL and BOOL' closures are not reformulations of each other");
      }
    }
  }
  for (const auto& csp : non_limited_patterns()) {
    ++report.instances;
    if (is_limited(csp)) fail(csp, "pattern reported as limited");
    if (!is_hyper_arc_consistent(csp)) fail(csp, "pattern is not hyper-arc consistent");
    if (closed_under(csp, prime_rules)) fail(csp, "pattern is closed under BOOL'");
  }
  random_sweep(options, [&](const BooleanCSP& csp) {
    check(csp);
    auto [by_bool, by_prime] = check_closures(csp);
    check(by_bool);
    check(by_prime);
  });
  report.seconds = seconds_since(start);
  return report;
}

}  // namespace bcp
