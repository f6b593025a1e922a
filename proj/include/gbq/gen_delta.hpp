#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbq {

// Generalized Kronecker delta: the determinant of the r x r matrix of plain
// deltas [upper_a == lower_b]. Indices are 1-based and r may exceed d (the
// value is then 0 by pigeonhole). Of the r! terms in the signed permutation
// expansion at most one survives once both lists are duplicate-free, so the
// value is found by matching rows to columns and reading off the parity.
inline int gen_delta(const std::vector<int>& upper, const std::vector<int>& lower, int d) {
  if (upper.size() != lower.size())
    throw std::invalid_argument("gen_delta: index lists differ in length");
  const int r = static_cast<int>(upper.size());
  if (r < 1) throw std::invalid_argument("gen_delta: empty index lists");
  for (int v : upper)
    if (v < 1 || v > d)
      throw std::domain_error("gen_delta: upper index " + std::to_string(v) +
                              " outside [1.." + std::to_string(d) + "]");
  for (int v : lower)
    if (v < 1 || v > d)
      throw std::domain_error("gen_delta: lower index " + std::to_string(v) +
                              " outside [1.." + std::to_string(d) + "]");

  // repeated index in either list: two equal rows or columns
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      if (upper[a] == upper[b] || lower[a] == lower[b]) return 0;

  std::array<int, 64> pi;
  std::array<bool, 64> used{};
  if (r > 64) throw std::invalid_argument("gen_delta: rank too large");
  for (int a = 0; a < r; ++a) {
    int match = -1;
    for (int b = 0; b < r; ++b)
      if (!used[b] && lower[b] == upper[a]) {
        match = b;
        break;
      }
    if (match < 0) return 0;  // value missing from the lower list
    used[match] = true;
    pi[a] = match;
  }
  int inv = 0;
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      if (pi[a] > pi[b]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace gbq
