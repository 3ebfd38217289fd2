#include "bcp/solver.hpp"

#include <algorithm>

namespace bcp {

namespace {

class Labeling {
 public:
  explicit Labeling(const RuleSet& rules) : rules_(rules) {}

  std::optional<BooleanCSP> run(const BooleanCSP& csp) {
    auto closure = close(csp, rules_, false);
    result.propagation_steps += closure.steps;
    const BooleanCSP& current = closure.result;
    if (is_failed(current)) return std::nullopt;
    const auto domains = current.domains();
    auto open = std::find_if(domains.begin(), domains.end(), [](Domain d) { return d.is_full(); });
    if (open == domains.end()) return current;
    ++result.split_count;
    const Var v = current.vars()[static_cast<std::size_t>(open - domains.begin())];
    for (bool value : {true, false}) {
      BooleanCSP branch = current;
      branch.set_domain(v, Domain::singleton(value));
      if (auto found = run(branch)) return found;
    }
    return std::nullopt;
  }

  SolveResult result;

 private:
  const RuleSet& rules_;
};

}  // namespace

SolveResult solve(const BooleanCSP& csp, const RuleSet& rules) {
  Labeling labeling(rules);
  auto leaf = labeling.run(csp);
  SolveResult result = labeling.result;
  if (!leaf) return result;
  Assignment model;
  for (Domain d : leaf->domains()) model.values.push_back(d.value());
  if (!satisfies(csp, model)) throw Error("labeling produced an assignment that is not a solution");
  result.status = SolveStatus::Sat;
  result.model = std::move(model);
  return result;
}

SolveResult solve(const CnfProblem& cnf, const RuleSet& rules) {
  const auto translated = cnf_to_csp(cnf);
  SolveResult result = solve(translated.csp, rules);
  if (result.model) result.model->values.resize(cnf.num_vars);
  return result;
}

}  // namespace bcp
