#include "bcp/clauses.hpp"

#include <algorithm>

namespace bcp {

// --- Clause / ClauseSet -------------------------------------------------------

Clause::Clause(std::initializer_list<Literal> literals) : Clause(std::vector<Literal>(literals)) {}

Clause::Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {
  std::sort(literals_.begin(), literals_.end());
  literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
}

bool Clause::contains(Literal l) const {
  return std::binary_search(literals_.begin(), literals_.end(), l);
}

Clause Clause::without(Literal l) const {
  Clause out = *this;
  std::erase(out.literals_, l);
  return out;
}

ClauseSet::ClauseSet(std::initializer_list<Clause> clauses) : ClauseSet(std::vector<Clause>(clauses)) {}

ClauseSet::ClauseSet(std::vector<Clause> clauses) : clauses_(std::move(clauses)) {
  std::sort(clauses_.begin(), clauses_.end());
  clauses_.erase(std::unique(clauses_.begin(), clauses_.end()), clauses_.end());
}

bool ClauseSet::contains(const Clause& c) const {
  return std::binary_search(clauses_.begin(), clauses_.end(), c);
}

bool ClauseSet::has_empty_clause() const { return !clauses_.empty() && clauses_.front().empty(); }

void ClauseSet::insert(const Clause& c) {
  auto it = std::lower_bound(clauses_.begin(), clauses_.end(), c);
  if (it == clauses_.end() || *it != c) clauses_.insert(it, c);
}

void ClauseSet::erase(const Clause& c) {
  auto it = std::lower_bound(clauses_.begin(), clauses_.end(), c);
  if (it != clauses_.end() && *it == c) clauses_.erase(it);
}

std::vector<Literal> ClauseSet::units() const {
  std::vector<Literal> out;
  for (const auto& c : clauses_) {
    if (c.is_unit()) out.push_back(c.literals()[0]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Var> ClauseSet::vars() const {
  std::vector<Var> out;
  for (const auto& c : clauses_) {
    for (auto l : c.literals()) out.push_back(l.var);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// --- Unit propagation ---------------------------------------------------------

ClauseSet apply_unit(const ClauseSet& cs, UnitOp op, Literal unit, const Clause& target) {
  if (!cs.contains(Clause{unit}) || !cs.contains(target)) {
    throw Error("unit step refers to a clause outside the set");
  }
  ClauseSet out = cs;
  if (op == UnitOp::Resolve) {
    if (!target.contains(~unit)) throw Error("resolution target lacks the complementary literal");
    out.erase(target);
    out.insert(target.without(~unit));
  } else {
    if (!target.contains(unit) || target == Clause{unit}) {
      throw Error("subsumption target must properly contain the unit");
    }
    out.erase(target);
  }
  return out;
}

std::vector<UnitStep> unit_step(const ClauseSet& cs) {
  std::vector<UnitStep> steps;
  for (auto u : cs.units()) {
    for (const auto& c : cs.clauses()) {
      if (c.contains(~u)) {
        steps.push_back(UnitStep{UnitOp::Resolve, u, c, apply_unit(cs, UnitOp::Resolve, u, c)});
      }
    }
    for (const auto& c : cs.clauses()) {
      if (c.contains(u) && !c.is_unit()) {
        steps.push_back(UnitStep{UnitOp::Subsume, u, c, apply_unit(cs, UnitOp::Subsume, u, c)});
      }
    }
  }
  return steps;
}

namespace {

std::optional<UnitStep> first_step(const ClauseSet& cs, UnitOp op) {
  for (auto u : cs.units()) {
    for (const auto& c : cs.clauses()) {
      const bool enabled = op == UnitOp::Resolve ? c.contains(~u) : (c.contains(u) && !c.is_unit());
      if (enabled) return UnitStep{op, u, c, apply_unit(cs, op, u, c)};
    }
  }
  return std::nullopt;
}

}  // namespace

UnitPropagation unit_propagate(const ClauseSet& cs, std::size_t max_steps) {
  UnitPropagation out{cs, {}};
  while (!out.fixpoint.has_empty_clause()) {
    auto step = first_step(out.fixpoint, UnitOp::Resolve);
    if (!step) step = first_step(out.fixpoint, UnitOp::Subsume);
    if (!step) break;
    if (out.trace.size() == max_steps) throw Error("unit propagation exceeded its step budget");
    out.fixpoint = step->result;
    out.trace.push_back(std::move(*step));
  }
  return out;
}

// --- Constraint -> clauses ------------------------------------------------------

std::vector<Clause> clauses_of(const Constraint& c) {
  const Var x = c.var(0);
  const Var y = c.var(1);
  switch (c.kind()) {
    case ConstraintKind::Eq: return {Clause{pos(x), neg(y)}, Clause{neg(x), pos(y)}};
    case ConstraintKind::Not: return {Clause{pos(x), pos(y)}, Clause{neg(x), neg(y)}};
    case ConstraintKind::And: {
      const Var z = c.var(2);
      return {Clause{neg(x), neg(y), pos(z)}, Clause{pos(x), neg(z)}, Clause{pos(y), neg(z)}};
    }
    case ConstraintKind::Or: {
      const Var z = c.var(2);
      return {Clause{neg(x), pos(z)}, Clause{neg(y), pos(z)}, Clause{pos(x), pos(y), neg(z)}};
    }
  }
  return {};
}

ClauseSet constraints_to_clauses(const ConstraintStore& s) {
  ClauseSet out;
  for (const auto& c : s.constraints()) {
    for (const auto& cl : clauses_of(c)) out.insert(cl);
  }
  for (auto l : s.literals()) out.insert(Clause{l});
  return out;
}

// --- Clauses -> constraints -----------------------------------------------------

FreshVarSource::FreshVarSource(Var first_free, std::string prefix, Vocabulary* names)
    : next_id_(first_free.id), prefix_(std::move(prefix)), names_(names) {}

Var FreshVarSource::next() {
  const Var v{next_id_++};
  ++issued_;
  if (names_ != nullptr) {
    while (names_->find(prefix_ + std::to_string(counter_))) ++counter_;
    names_->set_name(v, prefix_ + std::to_string(counter_++));
  }
  return v;
}

ConstraintStore trans_literals_eq(std::span<const Literal> ordered, Var target, FreshVarSource& fresh) {
  if (ordered.empty()) throw Error("cannot translate the empty clause");
  const Literal head = ordered.front();
  if (ordered.size() == 1) {
    return head.positive ? ConstraintStore({Constraint::eq(head.var, target)}, {})
                         : ConstraintStore({Constraint::negation(head.var, target)}, {});
  }
  ConstraintStore out;
  Var input = head.var;
  if (!head.positive) {
    input = fresh.next();
    out.insert(Constraint::negation(head.var, input));
  }
  const Var rest = fresh.next();
  out.insert(Constraint::disj(input, rest, target));
  out.merge(trans_literals_eq(ordered.subspan(1), rest, fresh));
  return out;
}

ConstraintStore trans_clause_eq(const Clause& q, Var target, FreshVarSource& fresh) {
  return trans_literals_eq(q.literals(), target, fresh);
}

ConstraintStore trans_clause(const Clause& q, FreshVarSource& fresh) {
  if (q.empty()) throw Error("cannot translate the empty clause");
  if (q.is_unit()) return ConstraintStore({}, {q.literals()[0]});
  const Var z = fresh.next();
  ConstraintStore out({}, {pos(z)});
  out.merge(trans_clause_eq(q, z, fresh));
  return out;
}

ConstraintStore trans_clauses(const ClauseSet& cs, FreshVarSource& fresh) {
  ConstraintStore out;
  for (const auto& c : cs.clauses()) out.merge(trans_clause(c, fresh));
  return out;
}

// --- Model enumeration ----------------------------------------------------------

namespace {

// Depth-first search over `order`, with values of all other variables taken
// from `values`. Each constraint is checked when its last free variable is set.
class ModelSearch {
 public:
  ModelSearch(const ConstraintStore& s, std::span<const Var> order, std::vector<std::uint8_t>& values)
      : store_(s), order_(order.begin(), order.end()), values_(values) {
    std::vector<std::int32_t> rank(values_.size(), -1);
    for (std::size_t i = 0; i < order_.size(); ++i) rank[order_[i].id] = static_cast<std::int32_t>(i);
    at_.resize(order_.size());
    lits_at_.resize(order_.size());
    for (const auto& c : s.constraints()) {
      std::int32_t last = -1;
      for (Var v : c.vars()) last = std::max(last, rank[v.id]);
      if (last < 0) fixed_.push_back(&c);
      else at_[static_cast<std::size_t>(last)].push_back(&c);
    }
    for (auto l : s.literals()) {
      if (rank[l.var.id] < 0) fixed_lits_.push_back(l);
      else lits_at_[static_cast<std::size_t>(rank[l.var.id])].push_back(l);
    }
  }

  // Returns false if the visitor stopped the search.
  bool run(const std::function<bool(std::span<const std::uint8_t>)>& visit) {
    for (auto l : fixed_lits_) {
      if ((values_[l.var.id] != 0) != l.positive) return true;
    }
    for (const auto* c : fixed_) {
      if (!check(*c)) return true;
    }
    return descend(0, visit);
  }

 private:
  bool check(const Constraint& c) const {
    std::array<bool, 3> v{};
    for (int i = 0; i < c.arity(); ++i) v[static_cast<std::size_t>(i)] = values_[c.var(i).id] != 0;
    return holds(c.kind(), std::span<const bool>(v.data(), static_cast<std::size_t>(c.arity())));
  }

  bool descend(std::size_t i, const std::function<bool(std::span<const std::uint8_t>)>& visit) {
    if (i == order_.size()) return visit(values_);
    for (std::uint8_t value : {0, 1}) {
      values_[order_[i].id] = value;
      bool ok = std::all_of(lits_at_[i].begin(), lits_at_[i].end(),
                            [&](Literal l) { return (value != 0) == l.positive; });
      for (std::size_t k = 0; ok && k < at_[i].size(); ++k) ok = check(*at_[i][k]);
      if (ok && !descend(i + 1, visit)) return false;
    }
    values_[order_[i].id] = 0;
    return true;
  }

  const ConstraintStore& store_;
  std::vector<Var> order_;
  std::vector<std::uint8_t>& values_;
  std::vector<std::vector<const Constraint*>> at_;
  std::vector<std::vector<Literal>> lits_at_;
  std::vector<const Constraint*> fixed_;
  std::vector<Literal> fixed_lits_;
};

std::uint32_t id_bound(const ConstraintStore& s, std::span<const Var> vars) {
  std::uint32_t bound = s.empty() ? 0 : max_var_id(s) + 1;
  for (Var v : vars) bound = std::max(bound, v.id + 1);
  return bound;
}

}  // namespace

void for_each_model(const ConstraintStore& s, std::span<const Var> vars,
                    const std::function<bool(std::span<const std::uint8_t>)>& visit) {
  for (Var v : s.vars()) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
      throw Error("model enumeration must cover every store variable");
    }
  }
  std::vector<std::uint8_t> values(id_bound(s, vars), 0);
  ModelSearch(s, vars, values).run(visit);
}

bool semantically_follows(const ConstraintStore& c, const ConstraintStore& s) {
  auto base = s.vars();
  std::sort(base.begin(), base.end());
  std::vector<Var> extra;
  for (Var v : c.vars()) {
    if (!std::binary_search(base.begin(), base.end(), v)) extra.push_back(v);
  }
  std::sort(extra.begin(), extra.end());

  std::vector<std::uint8_t> values(std::max(id_bound(s, base), id_bound(c, extra)), 0);
  bool follows = true;
  ModelSearch outer(s, base, values);
  outer.run([&](std::span<const std::uint8_t>) {
    bool extended = false;
    ModelSearch inner(c, extra, values);
    inner.run([&](std::span<const std::uint8_t>) {
      extended = true;
      return false;
    });
    follows = extended;
    return follows;
  });
  return follows;
}

// --- Text -------------------------------------------------------------------------

std::string to_string(const Clause& c, const Vocabulary& names) {
  if (c.empty()) return "[]";
  std::string out;
  for (auto l : c.literals()) out += (out.empty() ? "" : " | ") + to_string(l, names);
  return out;
}

std::string to_string(const ClauseSet& cs, const Vocabulary& names) {
  std::string out = "{";
  for (const auto& c : cs.clauses()) {
    out += (out.size() == 1 ? "" : ", ") + to_string(c, names);
  }
  return out + "}";
}

std::string format_step(const UnitStep& step, const Vocabulary& names) {
  const bool resolve = step.op == UnitOp::Resolve;
  std::string out = std::string(resolve ? "resolve" : "subsume") + " | " + to_string(step.unit, names) +
                    " | " + to_string(step.target, names);
  if (resolve) out += " -> " + to_string(step.target.without(~step.unit), names);
  return out;
}

}  // namespace bcp
