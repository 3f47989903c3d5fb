#include "dispbox/coverfree.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "dispbox/bitset64.hpp"
#include "dispbox/errors.hpp"

namespace dispbox {

void SetFamily::validate() const {
  if (sets.empty()) throw usage_error("SetFamily must contain at least one set");
  if (ground_size < 0) throw usage_error("SetFamily ground_size must be >= 0");
  for (std::size_t j = 0; j < sets.size(); ++j) {
    for (int e : sets[j]) {
      if (e < 0 || e >= ground_size)
        throw usage_error("SetFamily set " + std::to_string(j) + ": element " +
                          std::to_string(e) + " outside ground set of size " +
                          std::to_string(ground_size));
    }
  }
}

bool union_covers(const SetFamily& fam, int j, const std::vector<int>& a) {
  Bitset64 u(static_cast<std::size_t>(fam.ground_size));
  for (int i : a)
    for (int e : fam.sets[static_cast<std::size_t>(i)]) u.set(static_cast<std::size_t>(e));
  for (int e : fam.sets[static_cast<std::size_t>(j)])
    if (!u.test(static_cast<std::size_t>(e))) return false;
  return true;
}

namespace {

struct CoverSearch {
  const std::vector<Bitset64>& cov;         // per candidate: F_i intersected with F_j
  const std::vector<int>& cand_ids;         // family indices of candidates
  const std::vector<std::vector<int>>& elem_cands;  // per element: candidate positions covering it
  const std::vector<Bitset64>& conflict;    // per element: all elements sharing a candidate
  int best;
  std::vector<int> best_witness;            // candidate positions
  std::vector<int> chosen;

  // Elements needing pairwise-distinct covering sets; admissible lower bound.
  int packing_bound(const Bitset64& uncovered) const {
    Bitset64 excluded(uncovered.size());
    int lb = 0;
    uncovered.for_each_set([&](std::size_t e) {
      if (excluded.test(e)) return;
      ++lb;
      excluded |= conflict[e];
    });
    return lb;
  }

  void run(const Bitset64& uncovered, int depth) {
    if (uncovered.none()) {
      if (depth < best) {
        best = depth;
        best_witness = chosen;
      }
      return;
    }
    if (depth + packing_bound(uncovered) >= best) return;

    // Branch on the uncovered element with the fewest remaining candidates.
    std::size_t branch_elem = uncovered.size();
    std::size_t branch_count = SIZE_MAX;
    uncovered.for_each_set([&](std::size_t e) {
      std::size_t c = 0;
      for (int i : elem_cands[e])
        if (cov[static_cast<std::size_t>(i)].count_and(uncovered) > 0) ++c;
      if (c < branch_count) {
        branch_count = c;
        branch_elem = e;
      }
    });

    std::vector<std::pair<std::size_t, int>> order;  // (-coverage proxy via sort, candidate)
    for (int i : elem_cands[branch_elem]) {
      std::size_t g = cov[static_cast<std::size_t>(i)].count_and(uncovered);
      if (g > 0) order.emplace_back(g, i);
    }
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    for (const auto& [gain, i] : order) {
      Bitset64 next = uncovered;
      next.andnot_assign(cov[static_cast<std::size_t>(i)]);
      chosen.push_back(i);
      run(next, depth + 1);
      chosen.pop_back();
    }
  }
};

}  // namespace

CoverResult cover_number(const SetFamily& fam, int j) {
  fam.validate();
  const int d = fam.d();
  if (j < 0 || j >= d)
    throw usage_error("cover_number: set index " + std::to_string(j) +
                      " out of range for family of " + std::to_string(d) + " sets");

  const std::size_t m = static_cast<std::size_t>(fam.ground_size);
  Bitset64 target(m);
  for (int e : fam.sets[static_cast<std::size_t>(j)]) target.set(static_cast<std::size_t>(e));
  if (target.none()) return {0, {}};

  std::vector<Bitset64> cov;
  std::vector<int> cand_ids;
  Bitset64 coverable(m);
  for (int i = 0; i < d; ++i) {
    if (i == j) continue;
    Bitset64 b(m);
    for (int e : fam.sets[static_cast<std::size_t>(i)]) b.set(static_cast<std::size_t>(e));
    b &= target;
    if (b.none()) continue;
    coverable |= b;
    cov.push_back(std::move(b));
    cand_ids.push_back(i);
  }
  if (!target.is_subset_of(coverable)) return {std::nullopt, {}};  // uncoverable element

  std::vector<std::vector<int>> elem_cands(m);
  for (std::size_t c = 0; c < cov.size(); ++c)
    cov[c].for_each_set([&](std::size_t e) { elem_cands[e].push_back(static_cast<int>(c)); });
  std::vector<Bitset64> conflict(m, Bitset64(m));
  target.for_each_set([&](std::size_t e) {
    for (int c : elem_cands[e]) conflict[e] |= cov[static_cast<std::size_t>(c)];
  });

  // Greedy cover: initial upper bound and fallback witness.
  std::vector<int> greedy;
  {
    Bitset64 uncovered = target;
    while (uncovered.any()) {
      std::size_t best_gain = 0;
      int best_c = -1;
      for (std::size_t c = 0; c < cov.size(); ++c) {
        const std::size_t g = cov[c].count_and(uncovered);
        if (g > best_gain) {
          best_gain = g;
          best_c = static_cast<int>(c);
        }
      }
      greedy.push_back(best_c);
      uncovered.andnot_assign(cov[static_cast<std::size_t>(best_c)]);
    }
  }

  CoverSearch search{cov, cand_ids, elem_cands, conflict,
                     static_cast<int>(greedy.size()), greedy, {}};
  search.run(target, 0);

  std::vector<int> witness;
  witness.reserve(search.best_witness.size());
  for (int c : search.best_witness) witness.push_back(cand_ids[static_cast<std::size_t>(c)]);
  std::sort(witness.begin(), witness.end());
  return {search.best, witness};
}

CoverFreeCertificate certify_cover_free(const SetFamily& fam, int r, int workers) {
  fam.validate();
  if (r < 1) throw usage_error("certify_cover_free: r must be >= 1");
  const int d = fam.d();

  std::vector<CoverResult> per_j(static_cast<std::size_t>(d));
  unsigned hw = workers > 0 ? static_cast<unsigned>(workers)
                            : std::max(1u, std::thread::hardware_concurrency());
  const unsigned nthreads = static_cast<unsigned>(
      std::min<std::size_t>(hw, static_cast<std::size_t>(d)));
  if (nthreads <= 1) {
    for (int j = 0; j < d; ++j) per_j[static_cast<std::size_t>(j)] = cover_number(fam, j);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < nthreads; ++w) {
      threads.emplace_back([&, w] {
        for (int j = static_cast<int>(w); j < d; j += static_cast<int>(nthreads))
          per_j[static_cast<std::size_t>(j)] = cover_number(fam, j);
      });
    }
    for (auto& t : threads) t.join();
  }

  CoverFreeCertificate cert;
  cert.r = r;
  cert.per_j = std::move(per_j);
  int best_j = -1;
  for (int j = 0; j < d; ++j) {
    const auto& c = cert.per_j[static_cast<std::size_t>(j)];
    if (!c.number.has_value()) continue;  // infinite cover never refutes
    if (best_j < 0 ||
        *c.number < *cert.per_j[static_cast<std::size_t>(best_j)].number)
      best_j = j;
  }
  const bool refuted =
      best_j >= 0 && *cert.per_j[static_cast<std::size_t>(best_j)].number <= r;
  cert.certified = !refuted;
  if (refuted) {
    cert.refuting_j = best_j;
    cert.refuting_cover = cert.per_j[static_cast<std::size_t>(best_j)].witness;
  }
  return cert;
}

double alon_asodi_bound(int d, int r) {
  if (r < 2) throw usage_error("alon_asodi_bound: r >= 2 violated (r=" + std::to_string(r) + ")");
  if (static_cast<long long>(r) * r > 4LL * d)
    throw usage_error("alon_asodi_bound: r <= 2*sqrt(d) violated (r=" + std::to_string(r) +
                      ", d=" + std::to_string(d) + ")");
  if (!(d - 0.5 * r > 1.0))
    throw usage_error("alon_asodi_bound: d - r/2 > 1 violated (r=" + std::to_string(r) +
                      ", d=" + std::to_string(d) + ")");
  return 0.1 * static_cast<double>(r) * static_cast<double>(r) *
         std::log(static_cast<double>(d) - 0.5 * static_cast<double>(r)) /
         std::log(static_cast<double>(r));
}

}  // namespace dispbox
