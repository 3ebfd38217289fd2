#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bcp/cli.hpp"
#include "bcp/consistency.hpp"
#include "bcp/io.hpp"
#include "bcp/reduction.hpp"
#include "bcp/rulegen.hpp"
#include "bcp/solver.hpp"

namespace py = pybind11;
using namespace bcp;

namespace {

std::string domain_text(Domain d) {
  switch (d.bits()) {
    case 0: return "";
    case 1: return "0";
    case 2: return "1";
    default: return "01";
  }
}

py::list constraint_tuples(const BooleanCSP& csp, const Vocabulary& names) {
  py::list out;
  for (const auto& c : csp.constraints()) {
    py::list args;
    for (Var v : c.vars()) args.append(names.name(v));
    out.append(py::make_tuple(std::string(keyword(c.kind())), py::tuple(args)));
  }
  return out;
}

py::dict report_dict(const VerificationReport& r) {
  py::dict d;
  d["theorem"] = r.theorem;
  d["instances"] = r.instances;
  d["seconds"] = r.seconds;
  std::vector<std::string> cx;
  for (const auto& c : r.counterexamples) cx.push_back(c.description);
  d["counterexamples"] = cx;
  d["ok"] = r.ok();
  return d;
}

std::vector<std::vector<int>> clause_lists(const ClauseSet& cs) {
  std::vector<std::vector<int>> out;
  for (const auto& c : cs.clauses()) {
    std::vector<int> lits;
    for (auto l : c.literals()) lits.push_back((l.positive ? 1 : -1) * static_cast<int>(l.var.id + 1));
    out.push_back(std::move(lits));
  }
  return out;
}

ClauseSet clause_set(const std::vector<std::vector<int>>& clauses) {
  ClauseSet cs;
  for (const auto& c : clauses) {
    std::vector<Literal> lits;
    for (int k : c) {
      if (k == 0) throw py::value_error("literal 0 is not allowed");
      lits.push_back(Literal{Var{static_cast<std::uint32_t>(std::abs(k) - 1)}, k > 0});
    }
    cs.insert(Clause(std::move(lits)));
  }
  return cs;
}

}  // namespace

PYBIND11_MODULE(bcp, m) {
  m.doc() = "Boolean constraint propagation with the BOOL and BOOL' rule systems";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<CspProblem>(m, "Problem")
      .def_property_readonly("variables",
                             [](const CspProblem& p) {
                               std::vector<std::string> names;
                               for (Var v : p.csp.vars()) names.push_back(p.names.name(v));
                               return names;
                             })
      .def_property_readonly("domains",
                             [](const CspProblem& p) {
                               py::dict d;
                               for (Var v : p.csp.vars()) d[py::str(p.names.name(v))] = domain_text(p.csp.domain(v));
                               return d;
                             })
      .def_property_readonly("constraints", [](const CspProblem& p) { return constraint_tuples(p.csp, p.names); })
      .def_property_readonly("failed", [](const CspProblem& p) { return is_failed(p.csp); })
      .def("solutions",
           [](const CspProblem& p) {
             std::vector<std::vector<int>> out;
             for (const auto& a : solutions(p.csp)) out.emplace_back(a.values.begin(), a.values.end());
             return out;
           })
      .def("to_bcn", [](const CspProblem& p) { return print_bcn(p.csp, p.names); })
      .def("__repr__", [](const CspProblem& p) { return "<Problem " + std::to_string(p.csp.size()) + " vars>"; });

  m.def("parse_bcn", &parse_bcn, py::arg("text"));

  m.def(
      "propagate",
      [](const CspProblem& p, const std::string& system) {
        auto closure = close(p.csp, builtin_ruleset(parse_system(system)));
        std::vector<std::string> trace;
        for (const auto& s : closure.trace) trace.push_back(format_step(s, p.names));
        return py::make_tuple(CspProblem{p.names, std::move(closure.result)}, trace);
      },
      py::arg("problem"), py::arg("system") = "bool", "Closure under a rule system and the trace of steps.");

  m.def(
      "solve",
      [](const CspProblem& p, const std::string& system) {
        const auto r = solve(p.csp, builtin_ruleset(parse_system(system)));
        py::dict d;
        d["sat"] = r.status == SolveStatus::Sat;
        if (r.model) {
          py::dict model;
          for (std::size_t i = 0; i < r.model->values.size(); ++i) {
            model[py::str(p.names.name(p.csp.vars()[i]))] = r.model->values[i] ? 1 : 0;
          }
          d["model"] = model;
        } else {
          d["model"] = py::none();
        }
        d["propagation_steps"] = r.propagation_steps;
        d["split_count"] = r.split_count;
        return d;
      },
      py::arg("problem"), py::arg("system") = "bool");

  m.def(
      "check",
      [](const CspProblem& p) {
        const auto r = hyper_arc_consistent(p.csp);
        py::dict d;
        d["hyper_arc"] = r.hyper_arc;
        d["failed"] = r.failed;
        d["limited"] = r.limited;
        d["closed_bool"] = r.closed_bool;
        d["closed_bool_prime"] = r.closed_bool_prime;
        py::list witnesses;
        for (const auto& w : r.witnesses) {
          witnesses.append(py::make_tuple(to_string(w.constraint, p.names), p.names.name(w.var), w.value ? 1 : 0));
        }
        d["witnesses"] = witnesses;
        return d;
      },
      py::arg("problem"));

  m.def(
      "gen_rules",
      [](const std::string& kind) {
        std::vector<std::string> out;
        for (auto k : kAllKinds) {
          if (!kind.empty() && keyword(k) != kind) continue;
          for (const auto& r : generate_rules(k)) out.push_back(format_rule(r));
        }
        return out;
      },
      py::arg("kind") = "");

  m.def(
      "unit_propagate",
      [](const std::vector<std::vector<int>>& clauses) { return clause_lists(unit_propagate(clause_set(clauses)).fixpoint); },
      py::arg("clauses"), "Unit propagation over DIMACS-style integer clauses.");

  m.def(
      "to_cnf",
      [](const CspProblem& p) {
        return print_dimacs(csp_to_clauses(p.csp), p.names, static_cast<std::uint32_t>(p.csp.size()));
      },
      py::arg("problem"));
  m.def(
      "from_dimacs", [](const std::string& text) { return cnf_to_csp(parse_dimacs(text)); }, py::arg("text"));

  m.def(
      "verify",
      [](const std::string& theorem, std::size_t budget, std::uint64_t seed) {
        const SweepOptions options{budget, seed};
        if (theorem == "reduction1") return report_dict(verify_reduction1(options));
        if (theorem == "reduction2") return report_dict(verify_reduction2(options));
        if (theorem == "characterization") return report_dict(verify_characterization(options));
        if (theorem == "bool-prime") return report_dict(verify_bool_prime(options));
        if (theorem == "completeness") return report_dict(verify_completeness());
        throw py::value_error("unknown theorem '" + theorem + "'");
      },
      py::arg("theorem"), py::arg("budget") = 1000, py::arg("seed") = 1);

  m.def(
      "run_command",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_command(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a CLI command line; returns (exit code, stdout, stderr).");
}
