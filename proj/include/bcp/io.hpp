#pragma once

// Text formats: the line-oriented .bcn format for Boolean CSPs and DIMACS CNF.
//
//   # comment
//   var x y z
//   dom x 1          (0, 1, 01 or {})
//   and x y z        (also: eq a b, not a b, or a b c)

#include <string>
#include <string_view>

#include "bcp/clauses.hpp"
#include "bcp/model.hpp"
#include "bcp/vocabulary.hpp"

namespace bcp {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

struct CspProblem {
  Vocabulary names;
  BooleanCSP csp;
};

struct CnfProblem {
  Vocabulary names;
  ClauseSet clauses;
  std::uint32_t num_vars = 0;
};

CspProblem parse_bcn(std::string_view text);
std::string print_bcn(const BooleanCSP& csp, const Vocabulary& names);

/// Variable k of the file becomes Var{k-1}, named by a `c var k name` comment
/// when one is present and "x<k>" otherwise.
CnfProblem parse_dimacs(std::string_view text);
std::string print_dimacs(const ClauseSet& cs, const Vocabulary& names, std::uint32_t num_vars);

/// Clauses of every constraint plus a unit clause per singleton domain and a
/// pair of complementary units per empty domain. Variables keep their ids.
ClauseSet csp_to_clauses(const BooleanCSP& csp);

/// The translation of each clause, with fresh variables named _t<n>. The
/// empty clause becomes a fresh variable with an empty domain.
CspProblem cnf_to_csp(const CnfProblem& cnf);

/// Reads a file, picking the format from the extension (.cnf/.dimacs) or the
/// first non-comment line (`p cnf`).
bool looks_like_dimacs(std::string_view path, std::string_view text);
std::string read_file(const std::string& path);

}  // namespace bcp
