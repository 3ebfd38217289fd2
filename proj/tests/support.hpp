#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "bcp/io.hpp"
#include "bcp/model.hpp"

namespace bcp::test {

inline constexpr Var x{0}, y{1}, z{2}, u{3}, v{4}, w{5};

inline BooleanCSP bcn(const std::string& text) { return parse_bcn(text).csp; }

/// Bit i of a relation row holds the value at role position i.
inline std::uint32_t row(std::initializer_list<int> values) {
  std::uint32_t r = 0;
  int i = 0;
  for (int value : values) r |= static_cast<std::uint32_t>(value) << i++;
  return r;
}

inline std::vector<std::uint32_t> sorted_rows(std::initializer_list<std::initializer_list<int>> tuples) {
  std::vector<std::uint32_t> out;
  for (auto t : tuples) out.push_back(row(t));
  std::sort(out.begin(), out.end());
  return out;
}

inline Assignment assignment(std::initializer_list<int> values) {
  Assignment a;
  for (int value : values) a.values.push_back(value != 0);
  return a;
}

}  // namespace bcp::test
