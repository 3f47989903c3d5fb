#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace dispbox {

// C(n, k), or nullopt as soon as the value exceeds `cap`. Exact integer
// arithmetic (intermediate products held in 128 bits; the symmetric index
// keeps partial binomials monotone, so the early-out is sound).
inline std::optional<std::uint64_t> checked_binomial(std::uint64_t n, std::uint64_t k,
                                                     std::uint64_t cap) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 c = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    c = c * (n - i) / (i + 1);  // exact: c*(n-i) is divisible by (i+1) here
    if (c > cap) return std::nullopt;
  }
  return static_cast<std::uint64_t>(c);
}

// Advances a sorted k-subset of {0,...,n-1} to its colexicographic successor.
// Returns false when `subset` was the last one. Colex order compares subsets
// by their largest differing element, so it coincides with numeric order of
// the characteristic bitmasks.
inline bool next_colex_subset(std::vector<int>& subset, int n) {
  const int k = static_cast<int>(subset.size());
  for (int i = 0; i < k; ++i) {
    int limit = (i + 1 < k) ? subset[i + 1] : n;
    if (subset[i] + 1 < limit) {
      ++subset[i];
      for (int j = 0; j < i; ++j) subset[j] = j;
      return true;
    }
  }
  return false;
}

// Rank of a sorted k-subset in colex order: sum_i C(subset[i], i+1).
inline std::uint64_t colex_rank(const std::vector<int>& subset) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    auto b = checked_binomial(static_cast<std::uint64_t>(subset[i]), i + 1, UINT64_MAX);
    r += *b;
  }
  return r;
}

// Inverse of colex_rank for k-subsets of {0,...,n-1}.
inline std::vector<int> colex_unrank(std::uint64_t rank, int k, int n) {
  std::vector<int> out(static_cast<std::size_t>(k));
  int hi = n;
  for (int i = k; i >= 1; --i) {
    // Largest c with C(c, i) <= rank.
    int c = hi - 1;
    while (c >= i) {
      auto b = checked_binomial(static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(i),
                                UINT64_MAX);
      if (*b <= rank) break;
      --c;
    }
    out[static_cast<std::size_t>(i - 1)] = c;
    auto b = checked_binomial(static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(i),
                              UINT64_MAX);
    rank -= *b;
    hi = c;
  }
  return out;
}

}  // namespace dispbox
