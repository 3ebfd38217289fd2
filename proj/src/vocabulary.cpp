#include "bcp/vocabulary.hpp"

namespace bcp {

Vocabulary::Vocabulary(std::initializer_list<std::string_view> names) {
  for (auto n : names) intern(n);
}

Var Vocabulary::intern(std::string_view name) {
  if (auto v = find(name)) return *v;
  const auto id = static_cast<std::uint32_t>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(std::string(name), id);
  return Var{id};
}

std::optional<Var> Vocabulary::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return Var{it->second};
}

void Vocabulary::set_name(Var v, std::string_view name) {
  if (auto existing = find(name)) {
    if (*existing == v) return;
    throw Error("name '" + std::string(name) + "' is already in use");
  }
  if (v.id >= names_.size()) names_.resize(v.id + 1);
  if (!names_[v.id].empty()) ids_.erase(names_[v.id]);
  names_[v.id] = std::string(name);
  ids_.emplace(std::string(name), v.id);
}

bool Vocabulary::has_name(Var v) const { return v.id < names_.size() && !names_[v.id].empty(); }

std::string Vocabulary::name(Var v) const {
  if (has_name(v)) return names_[v.id];
  return "v" + std::to_string(v.id);
}

std::string to_string(Domain d) {
  switch (d.bits()) {
    case 0: return "{}";
    case 1: return "{0}";
    case 2: return "{1}";
    default: return "{0,1}";
  }
}

std::string to_string(Literal l, const Vocabulary& names) {
  return (l.positive ? "" : "~") + names.name(l.var);
}

std::string to_string(const Constraint& c, const Vocabulary& names) {
  const auto x = names.name(c.var(0));
  const auto y = names.name(c.var(1));
  switch (c.kind()) {
    case ConstraintKind::Eq: return x + " = " + y;
    case ConstraintKind::Not: return "~" + x + " = " + y;
    case ConstraintKind::And: return x + " & " + y + " = " + names.name(c.var(2));
    case ConstraintKind::Or: return x + " | " + y + " = " + names.name(c.var(2));
  }
  return "?";
}

std::string to_string(const ConstraintStore& s, const Vocabulary& names) {
  std::string out = "{";
  bool first = true;
  auto sep = [&] {
    if (!first) out += ", ";
    first = false;
  };
  for (const auto& c : s.constraints()) {
    sep();
    out += to_string(c, names);
  }
  for (auto l : s.literals()) {
    sep();
    out += to_string(l, names);
  }
  return out + "}";
}

}  // namespace bcp
