#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bcp/cli.hpp"
#include "bcp/random.hpp"
#include "bcp/solver.hpp"
#include "support.hpp"

using namespace bcp;
using namespace bcp::test;

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto dir = fs::temp_directory_path() / "bcp_cli_tests";
  fs::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

const RuleSet& BOOL() { return builtin_ruleset(RuleSystem::Bool); }
const RuleSet& BOOL_PRIME() { return builtin_ruleset(RuleSystem::BoolPrime); }

const char* kExample = "var x y z\ndom x 1\nand x y z\nnot x y\n";

}  // namespace

TEST_CASE("parse .bcn") {
  const auto p = parse_bcn(kExample);
  CHECK(p.csp == BooleanCSP({x, y, z}, {Domain::one(), Domain::full(), Domain::full()},
                            {Constraint::conj(x, y, z), Constraint::negation(x, y)}));
  CHECK(p.names.name(z) == "z");
  CHECK(is_failed(bcn("var x\ndom x {}")));
  CHECK(bcn("# comment\nvar a b   # trailing\n\n eq a b\n").constraints().size() == 1);
  CHECK(bcn("var b a\n").vars()[0] == Var{0});
}

TEST_CASE(".bcn errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_bcn(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("var x y z\nand x x z") == 2);
  CHECK(line_of("var x y\nand x y w") == 2);
  CHECK(line_of("var x\n\nfoo x") == 3);
  CHECK(line_of("var x\ndom x 2") == 2);
  CHECK(line_of("var x\nvar x") == 2);
  CHECK(line_of("var x\ndom x 1\ndom x 0") == 3);
  CHECK(line_of("var x y\neq x") == 2);
  CHECK(line_of("eq a b") == 1);
  CHECK_THROWS_WITH_AS(parse_bcn("var x z\nand x x z"), doctest::Contains("repeated variable"), ParseError);
}

TEST_CASE(".bcn round trip") {
  const std::string canonical = "var x y z\ndom x 1\ndom z {}\nnot x y\nand x y z\n";
  const auto p = parse_bcn(canonical);
  CHECK(print_bcn(p.csp, p.names) == canonical);
  Rng rng(53);
  const Vocabulary names{"a", "b", "c", "d", "e", "f"};
  for (int trial = 0; trial < 200; ++trial) {
    CspShape shape;
    shape.empty_domain_rate = 0.1;
    const auto csp = random_csp(rng, shape);
    const auto text = print_bcn(csp, names);
    const auto again = parse_bcn(text);
    CHECK(again.csp == csp);
    CHECK(print_bcn(again.csp, again.names) == text);
  }
}

TEST_CASE("DIMACS") {
  const auto cnf = parse_dimacs("c a comment\np cnf 3 2\n1 -2 0\n3\n 0\n");
  CHECK(cnf.num_vars == 3);
  CHECK(cnf.clauses == ClauseSet{Clause{pos(x), neg(y)}, Clause{pos(z)}});
  CHECK(cnf.names.name(z) == "x3");
  const auto text = print_dimacs(cnf.clauses, cnf.names, cnf.num_vars);
  const auto again = parse_dimacs(text);
  CHECK(again.clauses == cnf.clauses);
  CHECK(print_dimacs(again.clauses, again.names, again.num_vars) == text);

  CHECK(parse_dimacs("c var 1 alpha\np cnf 1 1\n1 0\n").names.name(x) == "alpha");
  CHECK(parse_dimacs("p cnf 1 1\n0\n").clauses.has_empty_clause());
  CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 x 0\n"), ParseError);
}

TEST_CASE("CSP and CNF conversions") {
  const auto csp = bcn("var x y z\ndom x 1\ndom y {}\nand x y z");
  const auto cs = csp_to_clauses(csp);
  CHECK(cs.contains(Clause{pos(x)}));
  CHECK(cs.contains(Clause{pos(y)}));
  CHECK(cs.contains(Clause{neg(y)}));
  CHECK(cs.contains(Clause{pos(x), neg(z)}));

  const auto back = cnf_to_csp(parse_dimacs("p cnf 2 2\n1 2 0\n0\n"));
  CHECK(is_failed(back.csp));
  CHECK(back.names.name(Var{2}) == "_t0");
  CHECK(back.csp.vars()[0] == x);
  CHECK(back.csp.vars()[1] == y);
}

TEST_CASE("solver examples") {
  const auto example = solve(bcn(kExample), BOOL());
  CHECK(example.status == SolveStatus::Sat);
  CHECK(example.model == assignment({1, 0, 0}));
  CHECK(example.split_count == 0);
  CHECK(example.propagation_steps > 0);

  const auto unsat = solve(bcn("var x y\neq x y\nnot x y"), BOOL());
  CHECK(unsat.status == SolveStatus::Unsat);
  CHECK_FALSE(unsat.model);

  const auto single = solve(bcn("var x"), BOOL());
  CHECK(single.model == assignment({1}));
  CHECK(single.split_count == 1);

  CHECK(solve(bcn("var x y z\nor x y z"), BOOL_PRIME()).model == assignment({1, 1, 1}));
}

TEST_CASE("property: solver agrees with the oracle under both systems") {
  Rng rng(59);
  CspShape shape;
  shape.max_vars = 10;
  shape.max_constraints = 10;
  shape.empty_domain_rate = 0.02;
  shape.full_domain_rate = 0.8;
  for (int trial = 0; trial < 300; ++trial) {
    const auto csp = random_csp(rng, shape);
    const bool sat = !solutions(csp).empty();
    for (const auto* rs : {&BOOL(), &BOOL_PRIME()}) {
      const auto result = solve(csp, *rs);
      CHECK((result.status == SolveStatus::Sat) == sat);
      CHECK(result.model.has_value() == sat);
      if (result.model) CHECK(satisfies(csp, *result.model));
    }
  }
}

TEST_CASE("property: solving DIMACS through the translation") {
  Rng rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    CnfProblem cnf;
    cnf.clauses = random_clause_set(rng, ClauseShape{5, 8, 3});
    cnf.num_vars = 5;
    const auto result = solve(cnf, BOOL());
    bool sat = false;
    for (std::uint32_t code = 0; code < 32 && !sat; ++code) {
      sat = std::all_of(cnf.clauses.clauses().begin(), cnf.clauses.clauses().end(), [&](const Clause& c) {
        return std::any_of(c.literals().begin(), c.literals().end(),
                           [&](Literal l) { return (((code >> l.var.id) & 1u) != 0) == l.positive; });
      });
    }
    CHECK((result.status == SolveStatus::Sat) == sat);
    if (result.model) {
      REQUIRE(result.model->values.size() == 5);
      for (const auto& c : cnf.clauses.clauses()) {
        CHECK(std::any_of(c.literals().begin(), c.literals().end(),
                          [&](Literal l) { return result.model->values[l.var.id] == l.positive; }));
      }
    }
  }
}

TEST_CASE("command: solve") {
  const auto path = write_temp("circuit.bcn", kExample);
  const auto sat = run({"solve", "--system", "bool", path});
  CHECK(sat.code == 0);
  CHECK(sat.out.starts_with("SAT\nx = 1\ny = 0\nz = 0\n"));
  CHECK(sat.out.find("# splits: 0") != std::string::npos);

  const auto unsat = run({"solve", "--system", "bool-prime", write_temp("unsat.bcn", "var x y\neq x y\nnot x y\n")});
  CHECK(unsat.code == 3);
  CHECK(unsat.out.starts_with("UNSAT"));

  const auto traced = run({"solve", "--trace", path});
  CHECK(traced.out.find("NOT 1 | ~x = y") != std::string::npos);

  const auto cnf = run({"solve", write_temp("f.cnf", "p cnf 2 2\n-1 0\n1 2 0\n")});
  CHECK(cnf.code == 0);
  CHECK(cnf.out.starts_with("SAT\nx1 = 0\nx2 = 1\n"));
}

TEST_CASE("command: propagate") {
  const auto result = run({"propagate", "--trace", write_temp("p.bcn", kExample)});
  CHECK(result.code == 0);
  CHECK(result.out == "NOT 1 | ~x = y | y {0,1}->{0}, -~x = y\n"
                      "AND 5 | x & y = z | z {0,1}->{0}, -x & y = z\n"
                      "var x y z\ndom x 1\ndom y 0\ndom z 0\n");
  const auto failed = run({"propagate", write_temp("pf.bcn", "var x y\ndom x 1\ndom y 1\nnot x y\n")});
  CHECK(failed.code == 3);
}

TEST_CASE("command: check") {
  const auto failed = run({"check", "--hyper-arc", write_temp("f.bcn", "var x y z\ndom x {}\nand x y z\n")});
  CHECK(failed.code == 3);
  CHECK(failed.out.starts_with("not hyper-arc consistent\n"));
  CHECK(failed.out.find("x & y = z: y = 0 has no support") != std::string::npos);

  const auto phi = write_temp("phi.bcn", "var x y z\ndom x 1\nand x y z\n");
  CHECK(run({"check", phi}).code == 0);
  CHECK(run({"check", "--limited", phi}).code == 3);
  CHECK(run({"check", "--closed", phi}).code == 0);
  const auto prime = run({"check", "--closed", "--system", "bool-prime", phi});
  CHECK(prime.code == 3);
  CHECK(prime.out.find("AND 1'") != std::string::npos);
}

TEST_CASE("command: gen-rules") {
  const auto all = run({"gen-rules"});
  CHECK(all.code == 0);
  CHECK(std::count(all.out.begin(), all.out.end(), '\n') == 20);
  const auto eq = run({"gen-rules", "--kind", "eq"});
  CHECK(eq.out == "EQU 1   x = y, x = 1 -> y = 1\n"
                  "EQU 2   x = y, y = 1 -> x = 1\n"
                  "EQU 3   x = y, x = 0 -> y = 0\n"
                  "EQU 4   x = y, y = 0 -> x = 0\n");
}

TEST_CASE("command: translate") {
  const auto cnf = run({"translate", "--to-cnf", write_temp("t.bcn", kExample)});
  CHECK(cnf.code == 0);
  CHECK(cnf.out.starts_with("c var 1 x\nc var 2 y\nc var 3 z\np cnf 3 6\n"));
  const auto back = run({"translate", "--to-bcn", write_temp("t.cnf", cnf.out)});
  CHECK(back.code == 0);
  const auto translated = parse_bcn(back.out);
  CHECK(translated.names.name(x) == "x");
  // The translation is equivalent on the original variables.
  const auto original = solutions(bcn(kExample));
  const auto result = solve(translated.csp, BOOL());
  REQUIRE(result.model);
  CHECK(Assignment{{result.model->values.begin(), result.model->values.begin() + 3}} == original.at(0));
  CHECK(run({"translate", "--to-bcn", write_temp("t2.bcn", kExample)}).code == 2);
}

TEST_CASE("command: verify") {
  const auto result = run({"verify", "--theorem", "characterization", "--budget", "100"});
  CHECK(result.code == 0);
  CHECK(result.out.ends_with("0 counterexamples\n"));
  CHECK(run({"verify", "--theorem", "completeness"}).code == 0);
  CHECK(run({"verify", "--theorem", "reduction2", "--seed", "4", "--budget", "50"}).code == 0);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"solve"}).code == 2);
  CHECK(run({"solve", "--system", "bool3", write_temp("u.bcn", kExample)}).code == 2);
  CHECK(run({"verify", "--theorem", "nope"}).code == 2);
  CHECK(run({"solve", "/nonexistent/file.bcn"}).code == 2);
  const auto bad = run({"solve", write_temp("bad.bcn", "var x y\nand x y y\n")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line 2") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}
