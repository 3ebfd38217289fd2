#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bcp/model.hpp"

namespace bcp {

struct Counterexample {
  std::string description;
  std::optional<BooleanCSP> csp;  // present for CSP-shaped instances
};

/// Outcome of one theorem-verification sweep.
struct VerificationReport {
  std::string theorem;
  std::size_t instances = 0;
  std::vector<Counterexample> counterexamples;
  double seconds = 0.0;

  bool ok() const { return counterexamples.empty(); }
};

/// Parameters for the randomized part of a sweep.
struct SweepOptions {
  std::size_t budget = 1000;
  std::uint64_t seed = 1;
};

}  // namespace bcp
