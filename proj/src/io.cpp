#include "bcp/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace bcp {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) words.push_back(line.substr(start, i - start));
  }
  return words;
}

template <typename Visit>
void for_each_line(std::string_view text, Visit&& visit) {
  std::size_t number = 0;
  while (!text.empty()) {
    const auto end = text.find('\n');
    ++number;
    visit(number, text.substr(0, end));
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
}

std::optional<Domain> parse_domain(std::string_view word) {
  if (word == "0") return Domain::zero();
  if (word == "1") return Domain::one();
  if (word == "01") return Domain::full();
  if (word == "{}") return Domain::none();
  return std::nullopt;
}

std::string_view domain_word(Domain d) {
  switch (d.bits()) {
    case 0: return "{}";
    case 1: return "0";
    case 2: return "1";
    default: return "01";
  }
}

std::optional<ConstraintKind> parse_kind(std::string_view word) {
  for (auto kind : kAllKinds) {
    if (keyword(kind) == word) return kind;
  }
  return std::nullopt;
}

std::optional<long long> parse_int(std::string_view word) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || ptr != word.data() + word.size()) return std::nullopt;
  return value;
}

}  // namespace

CspProblem parse_bcn(std::string_view text) {
  CspProblem out;
  std::vector<Var> vars;
  std::vector<Domain> domains;
  std::vector<bool> dom_given;
  std::vector<Constraint> constraints;

  for_each_line(text, [&](std::size_t number, std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto words = split_words(line);
    if (words.empty()) return;
    auto lookup = [&](std::string_view name) {
      auto v = out.names.find(name);
      if (!v) throw ParseError(number, "unknown variable '" + std::string(name) + "'");
      return *v;
    };
    const auto head = words[0];
    if (head == "var") {
      if (words.size() < 2) throw ParseError(number, "'var' needs at least one name");
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (out.names.find(words[i])) {
          throw ParseError(number, "variable '" + std::string(words[i]) + "' declared twice");
        }
        vars.push_back(out.names.intern(words[i]));
        domains.push_back(Domain::full());
        dom_given.push_back(false);
      }
    } else if (head == "dom") {
      if (words.size() != 3) throw ParseError(number, "expected 'dom <name> <0|1|01|{}>'");
      const Var v = lookup(words[1]);
      const auto d = parse_domain(words[2]);
      if (!d) throw ParseError(number, "bad domain '" + std::string(words[2]) + "'");
      if (dom_given[v.id]) throw ParseError(number, "domain of '" + std::string(words[1]) + "' given twice");
      dom_given[v.id] = true;
      domains[v.id] = *d;
    } else if (auto kind = parse_kind(head)) {
      const auto n = static_cast<std::size_t>(arity(*kind));
      if (words.size() != n + 1) {
        throw ParseError(number, "'" + std::string(head) + "' takes " + std::to_string(n) + " variables");
      }
      std::vector<Var> args;
      for (std::size_t i = 1; i <= n; ++i) {
        const Var v = lookup(words[i]);
        if (std::find(args.begin(), args.end(), v) != args.end()) {
          throw ParseError(number, "repeated variable '" + std::string(words[i]) + "'");
        }
        args.push_back(v);
      }
      constraints.emplace_back(*kind, args);
    } else {
      throw ParseError(number, "unrecognized line starting with '" + std::string(head) + "'");
    }
  });
  out.csp = BooleanCSP(std::move(vars), std::move(domains), std::move(constraints));
  return out;
}

std::string print_bcn(const BooleanCSP& csp, const Vocabulary& names) {
  std::string out;
  if (csp.size() > 0) {
    out += "var";
    for (Var v : csp.vars()) out += " " + names.name(v);
    out += "\n";
  }
  for (std::size_t i = 0; i < csp.size(); ++i) {
    if (csp.domains()[i].is_full()) continue;
    out += "dom " + names.name(csp.vars()[i]) + " " + std::string(domain_word(csp.domains()[i])) + "\n";
  }
  for (const auto& c : csp.constraints()) {
    out += keyword(c.kind());
    for (Var v : c.vars()) out += " " + names.name(v);
    out += "\n";
  }
  return out;
}

CnfProblem parse_dimacs(std::string_view text) {
  CnfProblem out;
  bool header = false;
  std::uint32_t declared_clauses = 0;
  std::uint32_t seen_clauses = 0;
  std::map<std::uint32_t, std::string> given_names;
  std::vector<Literal> pending;
  std::size_t last_line = 0;

  for_each_line(text, [&](std::size_t number, std::string_view line) {
    last_line = number;
    const auto words = split_words(line);
    if (words.empty()) return;
    if (words[0] == "c") {
      if (words.size() == 4 && words[1] == "var") {
        const auto k = parse_int(words[2]);
        if (!k || *k < 1) throw ParseError(number, "bad variable index in name comment");
        given_names[static_cast<std::uint32_t>(*k)] = std::string(words[3]);
      }
      return;
    }
    if (words[0] == "%") return;
    if (words[0] == "p") {
      if (header) throw ParseError(number, "second problem line");
      if (words.size() != 4 || words[1] != "cnf") throw ParseError(number, "expected 'p cnf <vars> <clauses>'");
      const auto n = parse_int(words[2]);
      const auto m = parse_int(words[3]);
      if (!n || !m || *n < 0 || *m < 0) throw ParseError(number, "bad problem line counts");
      out.num_vars = static_cast<std::uint32_t>(*n);
      declared_clauses = static_cast<std::uint32_t>(*m);
      header = true;
      return;
    }
    if (!header) throw ParseError(number, "clause before the problem line");
    for (auto word : words) {
      const auto value = parse_int(word);
      if (!value) throw ParseError(number, "bad literal '" + std::string(word) + "'");
      if (*value == 0) {
        out.clauses.insert(Clause(std::move(pending)));
        pending.clear();
        ++seen_clauses;
        continue;
      }
      const auto k = static_cast<std::uint32_t>(*value < 0 ? -*value : *value);
      if (k > out.num_vars) throw ParseError(number, "variable " + std::to_string(k) + " exceeds the header");
      pending.push_back(Literal{Var{k - 1}, *value > 0});
    }
  });
  if (!header) throw ParseError(last_line, "missing problem line");
  if (!pending.empty()) throw ParseError(last_line, "last clause is not terminated by 0");
  if (seen_clauses != declared_clauses) {
    throw ParseError(last_line, "header announces " + std::to_string(declared_clauses) + " clauses, found " +
                                    std::to_string(seen_clauses));
  }
  for (std::uint32_t k = 1; k <= out.num_vars; ++k) {
    auto it = given_names.find(k);
    out.names.set_name(Var{k - 1}, it != given_names.end() ? it->second : "x" + std::to_string(k));
  }
  return out;
}

std::string print_dimacs(const ClauseSet& cs, const Vocabulary& names, std::uint32_t num_vars) {
  std::ostringstream out;
  for (std::uint32_t k = 1; k <= num_vars; ++k) out << "c var " << k << " " << names.name(Var{k - 1}) << "\n";
  out << "p cnf " << num_vars << " " << cs.size() << "\n";
  for (const auto& c : cs.clauses()) {
    for (auto l : c.literals()) out << (l.positive ? "" : "-") << (l.var.id + 1) << " ";
    out << "0\n";
  }
  return out.str();
}

ClauseSet csp_to_clauses(const BooleanCSP& csp) {
  ClauseSet cs = constraints_to_clauses(ConstraintStore({csp.constraints().begin(), csp.constraints().end()}, {}));
  for (std::size_t i = 0; i < csp.size(); ++i) {
    const Domain d = csp.domains()[i];
    const Var v = csp.vars()[i];
    if (!d.contains(false)) cs.insert(Clause{pos(v)});
    if (!d.contains(true)) cs.insert(Clause{neg(v)});
  }
  return cs;
}

CspProblem cnf_to_csp(const CnfProblem& cnf) {
  CspProblem out;
  out.names = cnf.names;
  std::vector<Var> leading;
  for (std::uint32_t i = 0; i < cnf.num_vars; ++i) leading.push_back(Var{i});
  FreshVarSource fresh(Var{cnf.num_vars}, "_t", &out.names);
  ConstraintStore store;
  std::vector<Var> failed;
  for (const auto& c : cnf.clauses.clauses()) {
    if (c.empty()) {
      failed.push_back(fresh.next());
      leading.push_back(failed.back());
      continue;
    }
    store.merge(trans_clause(c, fresh));
  }
  out.csp = store_to_csp(store, leading);
  for (Var v : failed) out.csp.set_domain(v, Domain::none());
  return out;
}

bool looks_like_dimacs(std::string_view path, std::string_view text) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() && path.substr(path.size() - suffix.size()) == suffix;
  };
  if (ends_with(".cnf") || ends_with(".dimacs")) return true;
  if (ends_with(".bcn")) return false;
  bool found = false;
  bool dimacs = false;
  for_each_line(text, [&](std::size_t, std::string_view line) {
    if (found) return;
    const auto words = split_words(line);
    if (words.empty() || words[0] == "c" || words[0][0] == '#') return;
    found = true;
    dimacs = words[0] == "p";
  });
  return dimacs;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace bcp
