#pragma once

// Clauses, unit propagation, and the translations between constraint stores
// and clause sets in both directions.

#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "bcp/model.hpp"
#include "bcp/vocabulary.hpp"

namespace bcp {

/// Disjunction of distinct literals, kept sorted. May be empty.
class Clause {
 public:
  Clause() = default;
  Clause(std::initializer_list<Literal> literals);
  explicit Clause(std::vector<Literal> literals);

  std::span<const Literal> literals() const { return literals_; }
  std::size_t size() const { return literals_.size(); }
  bool empty() const { return literals_.empty(); }
  bool is_unit() const { return literals_.size() == 1; }
  bool contains(Literal l) const;
  Clause without(Literal l) const;

  bool operator==(const Clause&) const = default;
  auto operator<=>(const Clause&) const = default;

 private:
  std::vector<Literal> literals_;
};

class ClauseSet {
 public:
  ClauseSet() = default;
  ClauseSet(std::initializer_list<Clause> clauses);
  explicit ClauseSet(std::vector<Clause> clauses);

  std::span<const Clause> clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  bool contains(const Clause& c) const;
  bool has_empty_clause() const;
  void insert(const Clause& c);
  void erase(const Clause& c);
  /// Literals of the unit clauses, ascending.
  std::vector<Literal> units() const;
  std::vector<Var> vars() const;  // ascending

  bool operator==(const ClauseSet&) const = default;

 private:
  std::vector<Clause> clauses_;
};

enum class UnitOp { Resolve, Subsume };

/// Resolve: target contains ~unit and is replaced by target minus ~unit.
/// Subsume: target contains unit, differs from the unit clause, and is deleted.
struct UnitStep {
  UnitOp op = UnitOp::Resolve;
  Literal unit;
  Clause target;
  ClauseSet result;
};

/// Every single step enabled by a unit clause: units ascending; for each unit,
/// resolutions then subsumptions, targets ascending.
std::vector<UnitStep> unit_step(const ClauseSet& cs);
/// Applies one resolution or subsumption; throws if it is not enabled.
ClauseSet apply_unit(const ClauseSet& cs, UnitOp op, Literal unit, const Clause& target);

struct UnitPropagation {
  ClauseSet fixpoint;
  std::vector<UnitStep> trace;
};

/// Resolutions before subsumptions, lowest unit first, until nothing applies
/// or the empty clause appears. Throws Error past `max_steps`.
UnitPropagation unit_propagate(const ClauseSet& cs, std::size_t max_steps = 1'000'000);

/// Clausal form of one constraint.
std::vector<Clause> clauses_of(const Constraint& c);
/// Union of the clausal forms of the constraints plus one unit per literal.
ClauseSet constraints_to_clauses(const ConstraintStore& s);

/// Hands out variables never used before. Optionally names them
/// "<prefix><n>" in a vocabulary, skipping names already taken.
class FreshVarSource {
 public:
  explicit FreshVarSource(Var first_free, std::string prefix = "_t", Vocabulary* names = nullptr);

  Var next();
  std::uint32_t issued() const { return issued_; }

 private:
  std::uint32_t next_id_;
  std::uint32_t counter_ = 0;
  std::uint32_t issued_ = 0;
  std::string prefix_;
  Vocabulary* names_;
};

/// Encodes "literal_1 | ... | literal_n = target", peeling literals in the
/// given order. Throws on an empty sequence.
ConstraintStore trans_literals_eq(std::span<const Literal> ordered, Var target, FreshVarSource& fresh);
/// As above with the clause's canonical literal order.
ConstraintStore trans_clause_eq(const Clause& q, Var target, FreshVarSource& fresh);
/// Unit clause -> {literal}; otherwise {z} plus the encoding of q = z, z fresh.
ConstraintStore trans_clause(const Clause& q, FreshVarSource& fresh);
/// Per-clause translation in canonical clause order.
ConstraintStore trans_clauses(const ClauseSet& cs, FreshVarSource& fresh);

/// Every valuation of s's variables satisfying s extends, over the variables
/// only c mentions, to one satisfying c.
bool semantically_follows(const ConstraintStore& c, const ConstraintStore& s);

/// Calls `visit` with every model of the store over `vars` (values indexed by
/// var id). Stops early when `visit` returns false.
void for_each_model(const ConstraintStore& s, std::span<const Var> vars,
                    const std::function<bool(std::span<const std::uint8_t>)>& visit);

std::string to_string(const Clause& c, const Vocabulary& names);
std::string to_string(const ClauseSet& cs, const Vocabulary& names);
std::string format_step(const UnitStep& step, const Vocabulary& names);

}  // namespace bcp
