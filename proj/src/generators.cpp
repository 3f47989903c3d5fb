#include "dispbox/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <string>

#include "dispbox/bitset64.hpp"
#include "dispbox/combinatorics.hpp"
#include "dispbox/errors.hpp"
#include "dispbox/rng.hpp"

namespace dispbox {

PointSet uniform_random(int n, int d, std::uint64_t seed) {
  if (n < 0) throw usage_error("uniform_random: n must be >= 0");
  PointSet xs(d, "uniform(n=" + std::to_string(n) + ",d=" + std::to_string(d) +
                     ",seed=" + std::to_string(seed) + ")");
  Rng rng(seed);
  std::vector<double> p(static_cast<std::size_t>(d));
  for (int i = 0; i < n; ++i) {
    for (auto& c : p) c = rng.next_unit();
    xs.add(p);
  }
  return xs;
}

PointSet grid_random(int n, int d, int m, std::uint64_t seed) {
  if (n < 0) throw usage_error("grid_random: n must be >= 0");
  if (m < 2) throw usage_error("grid_random: grid resolution m must be >= 2, got " +
                               std::to_string(m));
  PointSet xs(d, "grid(n=" + std::to_string(n) + ",d=" + std::to_string(d) +
                     ",m=" + std::to_string(m) + ",seed=" + std::to_string(seed) + ")");
  Rng rng(seed);
  std::vector<double> p(static_cast<std::size_t>(d));
  for (int i = 0; i < n; ++i) {
    for (auto& c : p) {
      const auto idx = rng.next_below(static_cast<std::uint64_t>(m));  // 0..m-1
      c = static_cast<double>(idx + 1) / static_cast<double>(m + 1);
    }
    xs.add(p);
  }
  return xs;
}

PointSet superimposed_points(int d, int k, int n, std::optional<double> q,
                             std::uint64_t seed) {
  if (n < 0) throw usage_error("superimposed_points: n must be >= 0");
  if (k < 2 || k - 2 >= 62) throw usage_error("superimposed_points: k must be >= 2 (and sane)");
  if (d < 1) throw usage_error("superimposed_points: d must be >= 1");
  const std::uint64_t r = std::uint64_t(1) << (k - 2);
  const double qq = q.value_or(1.0 / (static_cast<double>(r) + 1.0));
  if (!(qq > 0.0 && qq < 1.0))
    throw usage_error("superimposed_points: q must be in (0,1), got " + std::to_string(qq));

  const double small = std::ldexp(1.0, -k);        // 2^{-k}
  const double large = 1.0 - std::ldexp(1.0, -k);  // 1 - 2^{-k}, exact

  char qbuf[32];
  std::snprintf(qbuf, sizeof qbuf, "%.17g", qq);
  PointSet xs(d, "superimposed(n=" + std::to_string(n) + ",d=" + std::to_string(d) +
                     ",k=" + std::to_string(k) + ",q=" + qbuf +
                     ",seed=" + std::to_string(seed) + ")");
  Rng rng(seed);
  std::vector<double> p(static_cast<std::size_t>(d));
  for (int i = 0; i < n; ++i) {
    for (auto& c : p) c = rng.next_unit() < qq ? small : large;
    xs.add(p);
  }
  return xs;
}

namespace {

struct HeapEntry {
  std::uint64_t count;
  std::uint64_t mask;
  std::uint64_t stamp;  // selection counter at computation time
};

struct HeapLess {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.count != b.count) return a.count < b.count;
    return a.mask > b.mask;  // smaller mask = colex-smaller pattern wins ties
  }
};

}  // namespace

PointSet greedy_hitting(int d, int k, GreedyOptions opts) {
  if (d < 2 || d > 64)
    throw usage_error("greedy_hitting: supports 2 <= d <= 64, got d=" + std::to_string(d));
  const std::uint64_t family = test_family_size(d, k, opts.cap);
  const int r = static_cast<int>(std::uint64_t(1) << (k - 2));
  const int s_max = opts.s_max > 0 ? opts.s_max : r + 1;
  if (s_max > d) throw usage_error("greedy_hitting: s_max must be <= d");

  // Box rank: colex rank of A, then the index of j within [d] \ A.
  const auto box_rank = [&](const std::vector<int>& a, int j) {
    int below = 0;
    for (int x : a)
      if (x < j) ++below;
    return colex_rank(a) * static_cast<std::uint64_t>(d - r) +
           static_cast<std::uint64_t>(j - below);
  };

  // Boxes covered by pattern S: (A, j) with j in S, A in colex order over the
  // axes outside S.
  const auto for_each_covered = [&](std::uint64_t mask, auto&& fn) {
    std::vector<int> outside;
    outside.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
      if (!((mask >> i) & 1)) outside.push_back(i);
    if (static_cast<int>(outside.size()) < r) return;
    std::vector<int> pick(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) pick[static_cast<std::size_t>(i)] = i;
    std::vector<int> a(static_cast<std::size_t>(r));
    do {
      for (int i = 0; i < r; ++i)
        a[static_cast<std::size_t>(i)] = outside[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
      for (int j = 0; j < d; ++j) {
        if (!((mask >> j) & 1)) continue;
        fn(box_rank(a, j));
      }
    } while (next_colex_subset(pick, static_cast<int>(outside.size())));
  };

  // All candidate patterns, by size then colex, with closed-form initial counts.
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapLess> heap;
  for (int s = 1; s <= s_max; ++s) {
    const auto boxes_per =
        checked_binomial(static_cast<std::uint64_t>(d - s), static_cast<std::uint64_t>(r),
                         UINT64_MAX);
    const std::uint64_t init_count = *boxes_per * static_cast<std::uint64_t>(s);
    std::vector<int> sub(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) sub[static_cast<std::size_t>(i)] = i;
    do {
      std::uint64_t mask = 0;
      for (int i : sub) mask |= std::uint64_t(1) << i;
      heap.push({init_count, mask, 0});
    } while (next_colex_subset(sub, d));
  }

  Bitset64 covered(family);
  std::uint64_t covered_count = 0;
  std::uint64_t selections = 0;
  std::vector<std::uint64_t> picked;

  while (covered_count < family) {
    HeapEntry top = heap.top();
    heap.pop();
    if (top.stamp != selections) {
      std::uint64_t fresh = 0;
      for_each_covered(top.mask, [&](std::uint64_t rank) {
        if (!covered.test(rank)) ++fresh;
      });
      heap.push({fresh, top.mask, selections});
      continue;
    }
    if (top.count == 0)
      throw internal_check_failure("greedy_hitting: no candidate covers the remaining boxes");
    for_each_covered(top.mask, [&](std::uint64_t rank) {
      if (!covered.test(rank)) {
        covered.set(rank);
        ++covered_count;
      }
    });
    picked.push_back(top.mask);
    ++selections;
  }

  const double small = std::ldexp(1.0, -k);
  const double large = 1.0 - std::ldexp(1.0, -k);
  PointSet xs(d, "greedy-hitting(d=" + std::to_string(d) + ",k=" + std::to_string(k) +
                     ",s_max=" + std::to_string(s_max) + ")");
  std::vector<double> p(static_cast<std::size_t>(d));
  for (std::uint64_t mask : picked) {
    for (int i = 0; i < d; ++i)
      p[static_cast<std::size_t>(i)] = ((mask >> i) & 1) ? small : large;
    xs.add(p);
  }
  return xs;
}

}  // namespace dispbox
