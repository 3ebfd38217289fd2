#pragma once

// Boolean CSP data model: variables, two-valued domains, the four
// connective constraints, CSPs, assignments and constraint stores.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bcp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Boolean variable, identified by a small integer. Names live in a
/// Vocabulary and are only needed for parsing and printing.
struct Var {
  std::uint32_t id = 0;

  auto operator<=>(const Var&) const = default;
};

/// Subset of {0,1}, stored as two bits. The empty domain marks a failed CSP.
class Domain {
 public:
  constexpr Domain() = default;

  static constexpr Domain none() { return Domain(0); }
  static constexpr Domain zero() { return Domain(1); }
  static constexpr Domain one() { return Domain(2); }
  static constexpr Domain full() { return Domain(3); }
  static constexpr Domain singleton(bool v) { return v ? one() : zero(); }
  static constexpr Domain from_bits(std::uint8_t bits) { return Domain(bits & 3u); }

  constexpr bool contains(bool v) const { return (bits_ >> (v ? 1 : 0)) & 1u; }
  constexpr bool is_empty() const { return bits_ == 0; }
  constexpr bool is_singleton() const { return bits_ == 1 || bits_ == 2; }
  constexpr bool is_full() const { return bits_ == 3; }
  constexpr int size() const { return (bits_ & 1) + ((bits_ >> 1) & 1); }
  // Only meaningful for singletons.
  constexpr bool value() const { return bits_ == 2; }
  constexpr std::uint8_t bits() const { return bits_; }

  constexpr Domain intersect(Domain other) const { return Domain(bits_ & other.bits_); }
  constexpr bool subset_of(Domain other) const { return (bits_ & ~other.bits_) == 0; }

  constexpr bool operator==(const Domain&) const = default;

 private:
  constexpr explicit Domain(std::uint8_t bits) : bits_(bits) {}
  std::uint8_t bits_ = 3;
};

enum class ConstraintKind : std::uint8_t { Eq, Not, And, Or };

inline constexpr std::array<ConstraintKind, 4> kAllKinds = {
    ConstraintKind::Eq, ConstraintKind::Not, ConstraintKind::And, ConstraintKind::Or};

constexpr int arity(ConstraintKind kind) {
  return (kind == ConstraintKind::Eq || kind == ConstraintKind::Not) ? 2 : 3;
}

/// "eq", "not", "and", "or"
std::string_view keyword(ConstraintKind kind);
/// "EQU", "NOT", "AND", "OR" (rule-name prefixes)
std::string_view rule_prefix(ConstraintKind kind);

/// Whether the values (one per role position) satisfy the connective.
/// For AND and OR the last position is the output; for NOT the relation is
/// ~v[0] = v[1].
bool holds(ConstraintKind kind, std::span<const bool> values);

struct Literal {
  Var var;
  bool positive = true;

  constexpr Literal operator~() const { return Literal{var, !positive}; }
  constexpr bool operator==(const Literal&) const = default;
  // Canonical order: by variable, positive before negative.
  constexpr std::strong_ordering operator<=>(const Literal& o) const {
    if (auto c = var <=> o.var; c != 0) return c;
    return o.positive <=> positive;
  }
};

constexpr Literal pos(Var v) { return Literal{v, true}; }
constexpr Literal neg(Var v) { return Literal{v, false}; }

/// One of the four connective constraints on pairwise distinct variables,
/// listed in role order: (x, y) for EQ/NOT, (x, y, z) with z the output for
/// AND/OR.
class Constraint {
 public:
  Constraint(ConstraintKind kind, std::span<const Var> vars);
  Constraint(ConstraintKind kind, std::initializer_list<Var> vars);

  static Constraint eq(Var x, Var y) { return {ConstraintKind::Eq, {x, y}}; }
  static Constraint negation(Var x, Var y) { return {ConstraintKind::Not, {x, y}}; }
  static Constraint conj(Var x, Var y, Var z) { return {ConstraintKind::And, {x, y, z}}; }
  static Constraint disj(Var x, Var y, Var z) { return {ConstraintKind::Or, {x, y, z}}; }

  ConstraintKind kind() const { return kind_; }
  int arity() const { return bcp::arity(kind_); }
  std::span<const Var> vars() const { return {vars_.data(), static_cast<std::size_t>(arity())}; }
  Var var(int position) const { return vars_[static_cast<std::size_t>(position)]; }
  bool mentions(Var v) const;

  bool operator==(const Constraint& o) const { return kind_ == o.kind_ && vars_ == o.vars_; }
  // Canonical order: by variable tuple, then kind.
  std::strong_ordering operator<=>(const Constraint& o) const;

 private:
  ConstraintKind kind_;
  std::array<Var, 3> vars_{};
};

/// Finite relation over {0,1}^arity. Row bit i holds the value at position i.
struct ConstraintTable {
  int arity = 0;
  std::vector<std::uint32_t> rows;  // sorted, unique

  bool contains(std::uint32_t row) const;
  bool operator==(const ConstraintTable&) const = default;
};

ConstraintTable truth_table(ConstraintKind kind);

/// Values over a CSP's variable sequence, aligned by position.
struct Assignment {
  std::vector<bool> values;

  bool operator[](std::size_t i) const { return values[i]; }
  auto operator<=>(const Assignment&) const = default;
};

class BooleanCSP {
 public:
  BooleanCSP() = default;
  /// Throws Error on duplicate variables, mismatched domain count, or a
  /// constraint over an undeclared variable.
  BooleanCSP(std::vector<Var> vars, std::vector<Domain> domains,
             std::vector<Constraint> constraints = {});

  std::span<const Var> vars() const { return vars_; }
  std::span<const Domain> domains() const { return domains_; }
  std::span<const Constraint> constraints() const { return constraints_; }
  std::size_t size() const { return vars_.size(); }

  bool has(Var v) const;
  /// Position of v in the variable sequence; throws if v is not declared.
  std::size_t position(Var v) const;
  Domain domain(Var v) const { return domains_[position(v)]; }
  bool contains(const Constraint& c) const;

  void set_domain(Var v, Domain d) { domains_[position(v)] = d; }
  void add_constraint(const Constraint& c);
  void remove_constraint(const Constraint& c);
  BooleanCSP without_solved() const;

  bool operator==(const BooleanCSP& o) const {
    return vars_ == o.vars_ && domains_ == o.domains_ && constraints_ == o.constraints_;
  }

 private:
  void check_declared(const Constraint& c) const;

  std::vector<Var> vars_;
  std::vector<Domain> domains_;
  std::vector<Constraint> constraints_;  // sorted, unique
  std::vector<std::int32_t> index_;      // var id -> position, -1 if absent
};

/// Rows of the connective's table that lie in the product of the current
/// domains of c's variables.
std::vector<std::uint32_t> restricted_relation(const Constraint& c, const BooleanCSP& csp);
bool is_solved(const Constraint& c, const BooleanCSP& csp);
bool is_failed(const BooleanCSP& csp);
bool satisfies(const BooleanCSP& csp, const Assignment& a);

/// All solutions, in lexicographic order of the value vector. Exhaustive;
/// intended for desk-scale CSPs.
std::vector<Assignment> solutions(const BooleanCSP& csp);

bool is_reformulation(const BooleanCSP& a, const BooleanCSP& b);
bool equivalent(const BooleanCSP& a, const BooleanCSP& b);

/// Finite set of Boolean constraints and literals, kept canonical (sorted,
/// duplicate-free) so equality is structural. May hold complementary literals.
class ConstraintStore {
 public:
  ConstraintStore() = default;
  ConstraintStore(std::vector<Constraint> constraints, std::vector<Literal> literals);

  std::span<const Constraint> constraints() const { return constraints_; }
  std::span<const Literal> literals() const { return literals_; }
  bool empty() const { return constraints_.empty() && literals_.empty(); }
  std::size_t size() const { return constraints_.size() + literals_.size(); }

  bool contains(const Constraint& c) const;
  bool contains(Literal l) const;
  void insert(const Constraint& c);
  void insert(Literal l);
  void erase(const Constraint& c);
  void erase(Literal l);
  void merge(const ConstraintStore& other);
  bool includes(const ConstraintStore& other) const;
  ConstraintStore minus(const ConstraintStore& other) const;

  /// Variables in first-occurrence order (constraints first, then literals).
  std::vector<Var> vars() const;

  bool operator==(const ConstraintStore&) const = default;

 private:
  std::vector<Constraint> constraints_;
  std::vector<Literal> literals_;
};

/// Reads each variable's literals as a domain expression: none -> {0,1},
/// x -> {1}, ~x -> {0}, both -> {}.
BooleanCSP store_to_csp(const ConstraintStore& s);
/// As above, but the variable sequence starts with `leading` (in that order),
/// followed by the remaining store variables in first-occurrence order.
BooleanCSP store_to_csp(const ConstraintStore& s, std::span<const Var> leading);
/// Inverse reading: every domain is expressible as a literal set.
ConstraintStore csp_to_store(const BooleanCSP& csp);

/// Whether `values` (indexed by var id; missing ids are errors) satisfies every
/// constraint and literal of the store.
bool satisfies(const ConstraintStore& s, std::span<const std::uint8_t> values);

std::uint32_t max_var_id(const ConstraintStore& s);

}  // namespace bcp
