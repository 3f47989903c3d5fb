#pragma once

#include <cstdint>
#include <optional>

#include "dispbox/construction.hpp"
#include "dispbox/geometry.hpp"

namespace dispbox {

// n points with i.i.d. uniform [0,1) coordinates. Deterministic per seed.
PointSet uniform_random(int n, int d, std::uint64_t seed);

// Coordinates sampled uniformly from the grid {1/(m+1), ..., m/(m+1)},
// strictly inside (0,1). Requires m >= 2.
PointSet grid_random(int n, int d, int m, std::uint64_t seed);

// Pattern points: each coordinate is 2^{-k} (strictly below the threshold
// 2^{1-k}) with probability q, else 1 - 2^{-k} (strictly above), independently.
// The small-coordinate pattern S(x) is a q-random subset of the axes.
// Default q = 1/(2^{k-2} + 1). All coordinates are exact dyadics.
PointSet superimposed_points(int d, int k, int n, std::optional<double> q,
                             std::uint64_t seed);

struct GreedyOptions {
  int s_max = 0;  // 0: default 2^{k-2} + 1
  std::uint64_t cap = kDefaultEnumerationCap;
};

// Greedy cover of the test-box family by pattern points with |S| <= s_max:
// a pattern S covers box (A, j) iff j in S and A does not meet S. Candidates
// are examined best-coverage-first with colex (numeric bitmask) tie-break;
// the output always satisfies hits_all. Supports d <= 64.
PointSet greedy_hitting(int d, int k, GreedyOptions opts = {});

}  // namespace dispbox
