#include <doctest.h>

#include "bcp/consistency.hpp"
#include "bcp/random.hpp"
#include "support.hpp"

using namespace bcp;
using namespace bcp::test;

TEST_CASE("hyper-arc consistency") {
  const auto phi = hyper_arc_consistent(bcn("var x y z\ndom x 1\nand x y z"));
  CHECK(phi.hyper_arc);
  CHECK(phi.witnesses.empty());
  CHECK_FALSE(phi.limited);
  CHECK(phi.closed_bool);
  CHECK_FALSE(phi.closed_bool_prime);

  const auto failed = hyper_arc_consistent(bcn("var x y z\ndom x {}\nand x y z"));
  CHECK_FALSE(failed.hyper_arc);
  CHECK(failed.failed);
  CHECK(failed.closed_bool);
  CHECK(failed.witnesses.size() == 4);

  const auto and4 = hyper_arc_consistent(bcn("var x y z\ndom x 0\nand x y z"));
  CHECK_FALSE(and4.hyper_arc);
  REQUIRE(and4.witnesses.size() == 1);
  CHECK(and4.witnesses[0] == Witness{Constraint::conj(x, y, z), z, true});

  CHECK(hyper_arc_consistent(bcn("var x y z\ndom x {}\ndom y {}\ndom z {}\nand x y z")).hyper_arc);
}

TEST_CASE("limited CSPs") {
  CHECK_FALSE(is_limited(bcn("var x y z\ndom x 1\nand x y z")));
  CHECK_FALSE(is_limited(bcn("var x y z\ndom y 0\nor x y z")));
  CHECK(is_limited(bcn("var x y z\ndom x 1\ndom y 0\nand x y z")));
  CHECK(is_limited(bcn("var x y z\ndom x 0\nand x y z")));
  for (const auto& p : non_limited_patterns()) CHECK_FALSE(is_limited(p));
}

TEST_CASE("single-constraint enumeration") {
  const auto all = single_constraint_csps();
  CHECK(all.size() == 72);
  for (const auto& csp : all) {
    CHECK_FALSE(is_failed(csp));
    CHECK(csp.constraints().size() == 1);
  }
}

TEST_CASE("characterization sweep") {
  const auto report = verify_characterization({300, 2});
  CHECK(report.ok());
  CHECK(report.instances >= 72 + 300);
}

TEST_CASE("every BOOL rule is needed") {
  const auto& bool_rules = builtin_ruleset(RuleSystem::Bool);
  for (const auto& rule : bool_rules.rules) {
    CAPTURE(rule.name);
    CHECK_FALSE(verify_characterization({300, 2}, bool_rules.without(rule.name)).ok());
  }
  const auto and4 = verify_characterization({300, 2}, bool_rules.without("AND 4"));
  const auto witness = bcn("var x y z\ndom x 0\nand x y z");
  const bool found = std::any_of(and4.counterexamples.begin(), and4.counterexamples.end(),
                                 [&](const Counterexample& c) { return c.csp && *c.csp == witness; });
  CHECK(found);
}

TEST_CASE("BOOL' sweep") {
  CHECK(verify_bool_prime({300, 2}).ok());
  for (const auto& p : non_limited_patterns()) {
    CHECK(is_hyper_arc_consistent(p));
    CHECK_FALSE(closed_under(p, builtin_ruleset(RuleSystem::BoolPrime)));
  }
}

TEST_CASE("property: a solution's singleton restriction is hyper-arc consistent") {
  Rng rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const auto csp = random_csp(rng);
    for (const auto& sol : solutions(csp)) {
      BooleanCSP fixed = csp;
      for (std::size_t i = 0; i < csp.size(); ++i) fixed.set_domain(csp.vars()[i], Domain::singleton(sol[i]));
      CHECK(is_hyper_arc_consistent(fixed));
    }
  }
}

TEST_CASE("property: an empty domain next to a nonempty one breaks consistency") {
  Rng rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    auto csp = random_csp(rng);
    const auto& c = csp.constraints()[0];
    csp.set_domain(c.var(0), Domain::none());
    if (csp.domain(c.var(1)).is_empty()) continue;
    CHECK_FALSE(is_hyper_arc_consistent(csp));
    CHECK(hyper_arc_consistent(csp).witnesses.size() > 0);
  }
}

TEST_CASE("report flags agree with the predicates") {
  Rng rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    const auto csp = random_csp(rng);
    const auto report = hyper_arc_consistent(csp);
    CHECK(report.hyper_arc == is_hyper_arc_consistent(csp));
    CHECK(report.hyper_arc == report.witnesses.empty());
    CHECK(report.limited == is_limited(csp));
    CHECK(report.closed_bool == closed_under(csp, builtin_ruleset(RuleSystem::Bool)));
  }
}
