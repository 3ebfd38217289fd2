#include "bcp/model.hpp"

#include <algorithm>
#include <functional>

namespace bcp {

namespace {

template <typename T>
void sorted_insert(std::vector<T>& v, const T& x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || !(*it == x)) v.insert(it, x);
}

template <typename T>
void sorted_erase(std::vector<T>& v, const T& x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
}

template <typename T>
bool sorted_contains(const std::vector<T>& v, const T& x) {
  return std::binary_search(v.begin(), v.end(), x);
}

template <typename T>
void canonicalize(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::string_view keyword(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::Eq: return "eq";
    case ConstraintKind::Not: return "not";
    case ConstraintKind::And: return "and";
    case ConstraintKind::Or: return "or";
  }
  return "?";
}

std::string_view rule_prefix(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::Eq: return "EQU";
    case ConstraintKind::Not: return "NOT";
    case ConstraintKind::And: return "AND";
    case ConstraintKind::Or: return "OR";
  }
  return "?";
}

bool holds(ConstraintKind kind, std::span<const bool> v) {
  switch (kind) {
    case ConstraintKind::Eq: return v[0] == v[1];
    case ConstraintKind::Not: return v[0] != v[1];
    case ConstraintKind::And: return (v[0] && v[1]) == v[2];
    case ConstraintKind::Or: return (v[0] || v[1]) == v[2];
  }
  return false;
}

// --- Constraint -------------------------------------------------------------

Constraint::Constraint(ConstraintKind kind, std::span<const Var> vars) : kind_(kind) {
  const auto n = static_cast<std::size_t>(bcp::arity(kind));
  if (vars.size() != n) {
    throw Error("constraint '" + std::string(keyword(kind)) + "' takes " + std::to_string(n) +
                " variables, got " + std::to_string(vars.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (vars[i] == vars[j]) {
        throw Error("repeated variable in '" + std::string(keyword(kind)) + "' constraint");
      }
    }
    vars_[i] = vars[i];
  }
}

Constraint::Constraint(ConstraintKind kind, std::initializer_list<Var> vars)
    : Constraint(kind, std::span<const Var>(vars.begin(), vars.size())) {}

bool Constraint::mentions(Var v) const {
  return std::find(vars().begin(), vars().end(), v) != vars().end();
}

std::strong_ordering Constraint::operator<=>(const Constraint& o) const {
  auto a = vars();
  auto b = o.vars();
  if (auto c = std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
      c != 0) {
    return c;
  }
  return kind_ <=> o.kind_;
}

// --- Tables -----------------------------------------------------------------

bool ConstraintTable::contains(std::uint32_t row) const {
  return std::binary_search(rows.begin(), rows.end(), row);
}

ConstraintTable truth_table(ConstraintKind kind) {
  ConstraintTable t;
  t.arity = arity(kind);
  for (std::uint32_t row = 0; row < (1u << t.arity); ++row) {
    std::array<bool, 3> v{};
    for (int i = 0; i < t.arity; ++i) v[static_cast<std::size_t>(i)] = (row >> i) & 1u;
    if (holds(kind, std::span<const bool>(v.data(), static_cast<std::size_t>(t.arity)))) {
      t.rows.push_back(row);
    }
  }
  return t;
}

// --- BooleanCSP ---------------------------------------------------------------

BooleanCSP::BooleanCSP(std::vector<Var> vars, std::vector<Domain> domains,
                       std::vector<Constraint> constraints)
    : vars_(std::move(vars)), domains_(std::move(domains)), constraints_(std::move(constraints)) {
  if (vars_.size() != domains_.size()) throw Error("one domain per variable is required");
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto id = vars_[i].id;
    if (id >= index_.size()) index_.resize(id + 1, -1);
    if (index_[id] != -1) throw Error("variable declared twice");
    index_[id] = static_cast<std::int32_t>(i);
  }
  for (const auto& c : constraints_) check_declared(c);
  canonicalize(constraints_);
}

bool BooleanCSP::has(Var v) const { return v.id < index_.size() && index_[v.id] >= 0; }

std::size_t BooleanCSP::position(Var v) const {
  if (!has(v)) throw Error("variable v" + std::to_string(v.id) + " is not declared");
  return static_cast<std::size_t>(index_[v.id]);
}

bool BooleanCSP::contains(const Constraint& c) const { return sorted_contains(constraints_, c); }

void BooleanCSP::check_declared(const Constraint& c) const {
  for (Var v : c.vars()) {
    if (!has(v)) throw Error("constraint mentions undeclared variable v" + std::to_string(v.id));
  }
}

void BooleanCSP::add_constraint(const Constraint& c) {
  check_declared(c);
  sorted_insert(constraints_, c);
}

void BooleanCSP::remove_constraint(const Constraint& c) { sorted_erase(constraints_, c); }

BooleanCSP BooleanCSP::without_solved() const {
  BooleanCSP out = *this;
  std::erase_if(out.constraints_, [this](const Constraint& c) { return is_solved(c, *this); });
  return out;
}

std::vector<std::uint32_t> restricted_relation(const Constraint& c, const BooleanCSP& csp) {
  const auto table = truth_table(c.kind());
  std::vector<std::uint32_t> out;
  for (auto row : table.rows) {
    bool inside = true;
    for (int i = 0; i < c.arity() && inside; ++i) {
      inside = csp.domain(c.var(i)).contains((row >> i) & 1u);
    }
    if (inside) out.push_back(row);
  }
  return out;
}

bool is_solved(const Constraint& c, const BooleanCSP& csp) {
  std::size_t product = 1;
  for (Var v : c.vars()) product *= static_cast<std::size_t>(csp.domain(v).size());
  return restricted_relation(c, csp).size() == product;
}

bool is_failed(const BooleanCSP& csp) {
  return std::any_of(csp.domains().begin(), csp.domains().end(),
                     [](Domain d) { return d.is_empty(); });
}

namespace {

bool constraint_holds(const Constraint& c, const BooleanCSP& csp, const std::vector<bool>& values) {
  std::array<bool, 3> v{};
  for (int i = 0; i < c.arity(); ++i) {
    v[static_cast<std::size_t>(i)] = values[csp.position(c.var(i))];
  }
  return holds(c.kind(), std::span<const bool>(v.data(), static_cast<std::size_t>(c.arity())));
}

}  // namespace

bool satisfies(const BooleanCSP& csp, const Assignment& a) {
  if (a.values.size() != csp.size()) return false;
  for (std::size_t i = 0; i < csp.size(); ++i) {
    if (!csp.domains()[i].contains(a.values[i])) return false;
  }
  return std::all_of(csp.constraints().begin(), csp.constraints().end(),
                     [&](const Constraint& c) { return constraint_holds(c, csp, a.values); });
}

std::vector<Assignment> solutions(const BooleanCSP& csp) {
  // Depth-first over the declared order; each constraint is checked once its
  // last variable (by position) is assigned.
  const std::size_t n = csp.size();
  std::vector<std::vector<const Constraint*>> completes_at(n);
  for (const auto& c : csp.constraints()) {
    std::size_t last = 0;
    for (Var v : c.vars()) last = std::max(last, csp.position(v));
    completes_at[last].push_back(&c);
  }

  std::vector<Assignment> out;
  std::vector<bool> values(n, false);
  std::function<void(std::size_t)> descend = [&](std::size_t i) {
    if (i == n) {
      out.push_back(Assignment{values});
      return;
    }
    for (bool v : {false, true}) {
      if (!csp.domains()[i].contains(v)) continue;
      values[i] = v;
      bool ok = true;
      for (const auto* c : completes_at[i]) {
        if (!constraint_holds(*c, csp, values)) {
          ok = false;
          break;
        }
      }
      if (ok) descend(i + 1);
    }
  };
  descend(0);
  return out;
}

namespace {

void require_same_vars(const BooleanCSP& a, const BooleanCSP& b) {
  if (!std::equal(a.vars().begin(), a.vars().end(), b.vars().begin(), b.vars().end())) {
    throw Error("CSPs are over different variable sequences");
  }
}

}  // namespace

bool is_reformulation(const BooleanCSP& a, const BooleanCSP& b) {
  require_same_vars(a, b);
  return a.without_solved() == b.without_solved();
}

bool equivalent(const BooleanCSP& a, const BooleanCSP& b) {
  require_same_vars(a, b);
  return solutions(a) == solutions(b);
}

// --- ConstraintStore ----------------------------------------------------------

ConstraintStore::ConstraintStore(std::vector<Constraint> constraints, std::vector<Literal> literals)
    : constraints_(std::move(constraints)), literals_(std::move(literals)) {
  canonicalize(constraints_);
  canonicalize(literals_);
}

bool ConstraintStore::contains(const Constraint& c) const { return sorted_contains(constraints_, c); }
bool ConstraintStore::contains(Literal l) const { return sorted_contains(literals_, l); }
void ConstraintStore::insert(const Constraint& c) { sorted_insert(constraints_, c); }
void ConstraintStore::insert(Literal l) { sorted_insert(literals_, l); }
void ConstraintStore::erase(const Constraint& c) { sorted_erase(constraints_, c); }
void ConstraintStore::erase(Literal l) { sorted_erase(literals_, l); }

void ConstraintStore::merge(const ConstraintStore& other) {
  for (const auto& c : other.constraints_) insert(c);
  for (auto l : other.literals_) insert(l);
}

bool ConstraintStore::includes(const ConstraintStore& other) const {
  return std::includes(constraints_.begin(), constraints_.end(), other.constraints_.begin(),
                       other.constraints_.end()) &&
         std::includes(literals_.begin(), literals_.end(), other.literals_.begin(),
                       other.literals_.end());
}

ConstraintStore ConstraintStore::minus(const ConstraintStore& other) const {
  ConstraintStore out;
  std::set_difference(constraints_.begin(), constraints_.end(), other.constraints_.begin(),
                      other.constraints_.end(), std::back_inserter(out.constraints_));
  std::set_difference(literals_.begin(), literals_.end(), other.literals_.begin(),
                      other.literals_.end(), std::back_inserter(out.literals_));
  return out;
}

std::vector<Var> ConstraintStore::vars() const {
  std::vector<Var> out;
  auto note = [&out](Var v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  for (const auto& c : constraints_) {
    for (Var v : c.vars()) note(v);
  }
  for (auto l : literals_) note(l.var);
  return out;
}

BooleanCSP store_to_csp(const ConstraintStore& s) { return store_to_csp(s, {}); }

BooleanCSP store_to_csp(const ConstraintStore& s, std::span<const Var> leading) {
  std::vector<Var> vars(leading.begin(), leading.end());
  for (Var v : s.vars()) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  std::vector<Domain> domains(vars.size(), Domain::full());
  BooleanCSP csp(vars, domains, {s.constraints().begin(), s.constraints().end()});
  for (auto l : s.literals()) {
    csp.set_domain(l.var, csp.domain(l.var).intersect(Domain::singleton(l.positive)));
  }
  return csp;
}

ConstraintStore csp_to_store(const BooleanCSP& csp) {
  std::vector<Literal> literals;
  for (std::size_t i = 0; i < csp.size(); ++i) {
    const Domain d = csp.domains()[i];
    if (!d.contains(false)) literals.push_back(pos(csp.vars()[i]));
    if (!d.contains(true)) literals.push_back(neg(csp.vars()[i]));
  }
  return ConstraintStore({csp.constraints().begin(), csp.constraints().end()},
                         std::move(literals));
}

bool satisfies(const ConstraintStore& s, std::span<const std::uint8_t> values) {
  for (auto l : s.literals()) {
    if ((values[l.var.id] != 0) != l.positive) return false;
  }
  for (const auto& c : s.constraints()) {
    std::array<bool, 3> v{};
    for (int i = 0; i < c.arity(); ++i) v[static_cast<std::size_t>(i)] = values[c.var(i).id] != 0;
    if (!holds(c.kind(), std::span<const bool>(v.data(), static_cast<std::size_t>(c.arity())))) {
      return false;
    }
  }
  return true;
}

std::uint32_t max_var_id(const ConstraintStore& s) {
  std::uint32_t m = 0;
  for (const auto& c : s.constraints()) {
    for (Var v : c.vars()) m = std::max(m, v.id);
  }
  for (auto l : s.literals()) m = std::max(m, l.var.id);
  return m;
}

}  // namespace bcp
