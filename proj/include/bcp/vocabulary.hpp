#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bcp/model.hpp"

namespace bcp {

/// Name table for variables. Unnamed ids print as "v<id>".
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::initializer_list<std::string_view> names);

  /// Returns the existing variable for `name` or allocates the next id.
  Var intern(std::string_view name);
  std::optional<Var> find(std::string_view name) const;
  /// Attaches a name to an id allocated elsewhere. Throws if the name is taken
  /// by a different variable.
  void set_name(Var v, std::string_view name);
  bool has_name(Var v) const;
  std::string name(Var v) const;
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;  // indexed by id; empty = unnamed
  std::unordered_map<std::string, std::uint32_t> ids_;
};

std::string to_string(Domain d);
std::string to_string(Literal l, const Vocabulary& names);
/// "x = y", "~x = y", "x & y = z", "x | y = z"
std::string to_string(const Constraint& c, const Vocabulary& names);
/// "{x & y = z, ~x, z}"
std::string to_string(const ConstraintStore& s, const Vocabulary& names);

}  // namespace bcp
