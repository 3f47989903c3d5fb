#include "dispbox/dispersion.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include "dispbox/errors.hpp"
#include "dispbox/rng.hpp"

namespace dispbox {

const char* to_string(DispersionResult::Mode m) {
  return m == DispersionResult::Mode::exact ? "exact" : "lower-estimate";
}

std::vector<double> candidate_coordinates(const PointSet& xs, int axis) {
  if (axis < 0 || axis >= xs.dim())
    throw usage_error("candidate_coordinates: axis " + std::to_string(axis) +
                      " out of range for dimension " + std::to_string(xs.dim()));
  std::vector<double> cs;
  cs.reserve(xs.size() + 2);
  cs.push_back(0.0);
  cs.push_back(1.0);
  for (std::size_t i = 0; i < xs.size(); ++i) cs.push_back(xs.coord(i, axis));
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  return cs;
}

namespace {

struct Candidate {
  double volume = -1.0;
  std::vector<double> lo, hi;
  bool valid() const { return volume >= 0.0; }
};

bool witness_less(const std::vector<double>& lo_a, const std::vector<double>& hi_a,
                  const std::vector<double>& lo_b, const std::vector<double>& hi_b) {
  if (lo_a != lo_b)
    return std::lexicographical_compare(lo_a.begin(), lo_a.end(), lo_b.begin(), lo_b.end());
  return std::lexicographical_compare(hi_a.begin(), hi_a.end(), hi_b.begin(), hi_b.end());
}

void offer(Candidate& best, double vol, const std::vector<double>& lo,
           const std::vector<double>& hi) {
  if (vol > best.volume || (vol == best.volume && witness_less(lo, hi, best.lo, best.hi)))
    best = Candidate{vol, lo, hi};
}

void merge(Candidate& best, const Candidate& other) {
  if (other.valid()) offer(best, other.volume, other.lo, other.hi);
}

// Deduplicated flat copy of the points (duplicates never change emptiness).
std::vector<double> dedup_points(const PointSet& xs, std::size_t& n_out) {
  const int d = xs.dim();
  std::vector<std::vector<double>> rows;
  rows.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto p = xs.point(i);
    rows.emplace_back(p.begin(), p.end());
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  std::vector<double> flat;
  flat.reserve(rows.size() * static_cast<std::size_t>(d));
  for (auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  n_out = rows.size();
  return flat;
}

// Exhaustive search over candidate boxes. A box is counted as soon as its
// emptiness is decided; `alive` holds the points still inside the partial box.
struct ExactSearch {
  int d;
  const std::vector<double>& pts;                  // flat, n x d
  const std::vector<std::vector<double>>& cand;    // per-axis candidate grids
  Candidate best;
  std::uint64_t boxes = 0;
  std::vector<double> lo, hi;

  ExactSearch(int d_, const std::vector<double>& pts_,
              const std::vector<std::vector<double>>& cand_)
      : d(d_), pts(pts_), cand(cand_), lo(static_cast<std::size_t>(d_)),
        hi(static_cast<std::size_t>(d_)) {}

  double coord(std::uint32_t p, int axis) const {
    return pts[static_cast<std::size_t>(p) * static_cast<std::size_t>(d) +
               static_cast<std::size_t>(axis)];
  }

  // All remaining axes can span (0,1): that completion has maximal volume and
  // the smallest witness key among completions of this prefix.
  void complete_unblocked(int axis, double partial) {
    for (int i = axis; i < d; ++i) {
      lo[static_cast<std::size_t>(i)] = 0.0;
      hi[static_cast<std::size_t>(i)] = 1.0;
    }
    ++boxes;
    offer(best, partial, lo, hi);
  }

  // Maximal empty intervals between consecutive alive coordinates on the last
  // axis. Non-maximal final intervals have strictly smaller volume and can
  // never tie the optimum, so skipping them preserves exactness.
  void sweep_last_axis(const std::vector<std::uint32_t>& alive, double partial) {
    const int axis = d - 1;
    std::vector<double> cs;
    cs.reserve(alive.size());
    for (auto p : alive) cs.push_back(coord(p, axis));
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    double prev = 0.0;
    for (double c : cs) {
      if (c > prev) {
        ++boxes;
        const double vol = partial * (c - prev);
        lo[static_cast<std::size_t>(axis)] = prev;
        hi[static_cast<std::size_t>(axis)] = c;
        if (vol >= best.volume) offer(best, vol, lo, hi);
      }
      prev = c;
    }
    if (prev < 1.0) {
      ++boxes;
      const double vol = partial * (1.0 - prev);
      lo[static_cast<std::size_t>(axis)] = prev;
      hi[static_cast<std::size_t>(axis)] = 1.0;
      if (vol >= best.volume) offer(best, vol, lo, hi);
    }
  }

  void recurse(int axis, const std::vector<std::uint32_t>& alive, double partial) {
    if (partial < best.volume) return;  // remaining spans are <= 1
    if (alive.empty()) {
      complete_unblocked(axis, partial);
      return;
    }
    if (axis == d - 1) {
      sweep_last_axis(alive, partial);
      return;
    }
    const auto& cs = cand[static_cast<std::size_t>(axis)];
    std::vector<std::uint32_t> next;
    for (std::size_t ai = 0; ai + 1 < cs.size(); ++ai) {
      for (std::size_t bi = ai + 1; bi < cs.size(); ++bi) {
        const double a = cs[ai], b = cs[bi];
        const double pv = partial * (b - a);
        if (pv < best.volume) continue;
        next.clear();
        for (auto p : alive) {
          const double x = coord(p, axis);
          if (a < x && x < b) next.push_back(p);
        }
        lo[static_cast<std::size_t>(axis)] = a;
        hi[static_cast<std::size_t>(axis)] = b;
        recurse(axis + 1, next, pv);
      }
    }
  }

  // Entry point restricted to a range of axis-0 interval pairs; used to
  // partition the box space across workers.
  void run_axis0_pairs(std::size_t pair_begin, std::size_t pair_end,
                       const std::vector<std::uint32_t>& all) {
    const auto& cs = cand[0];
    std::size_t idx = 0;
    for (std::size_t ai = 0; ai + 1 < cs.size(); ++ai) {
      for (std::size_t bi = ai + 1; bi < cs.size(); ++bi, ++idx) {
        if (idx < pair_begin || idx >= pair_end) continue;
        const double a = cs[ai], b = cs[bi];
        std::vector<std::uint32_t> next;
        for (auto p : all) {
          const double x = coord(p, 0);
          if (a < x && x < b) next.push_back(p);
        }
        lo[0] = a;
        hi[0] = b;
        recurse(1, next, b - a);
      }
    }
  }
};

}  // namespace

DispersionResult exact_dispersion(const PointSet& xs, const SearchConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const int d = xs.dim();
  if (d > cfg.max_exact_dim)
    throw usage_error("exact_dispersion: dimension " + std::to_string(d) +
                      " exceeds max_exact_dim " + std::to_string(cfg.max_exact_dim) +
                      " (search is exponential in d); use estimate_dispersion");

  std::size_t n = 0;
  const std::vector<double> pts = dedup_points(xs, n);
  std::vector<std::vector<double>> cand;
  cand.reserve(static_cast<std::size_t>(d));
  for (int axis = 0; axis < d; ++axis) cand.push_back(candidate_coordinates(xs, axis));

  std::vector<std::uint32_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<std::uint32_t>(i);

  Candidate best;
  std::uint64_t boxes = 0;

  if (n == 0) {
    ExactSearch s(d, pts, cand);
    s.recurse(0, all, 1.0);
    best = s.best;
    boxes = s.boxes;
  } else if (d == 1) {
    ExactSearch s(d, pts, cand);
    s.sweep_last_axis(all, 1.0);
    best = s.best;
    boxes = s.boxes;
  } else {
    const std::size_t m0 = cand[0].size();
    const std::size_t pairs = m0 * (m0 - 1) / 2;
    unsigned hw = cfg.workers > 0 ? static_cast<unsigned>(cfg.workers)
                                  : std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(1, pairs / 8)));
    if (workers <= 1) {
      ExactSearch s(d, pts, cand);
      s.run_axis0_pairs(0, pairs, all);
      best = s.best;
      boxes = s.boxes;
    } else {
      std::vector<ExactSearch> searches;
      searches.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) searches.emplace_back(d, pts, cand);
      std::vector<std::thread> threads;
      for (unsigned w = 0; w < workers; ++w) {
        const std::size_t b = pairs * w / workers;
        const std::size_t e = pairs * (w + 1) / workers;
        threads.emplace_back([&, w, b, e] { searches[w].run_axis0_pairs(b, e, all); });
      }
      for (auto& t : threads) t.join();
      for (const auto& s : searches) {
        merge(best, s.best);
        boxes += s.boxes;
      }
    }
  }

  AxisBox witness(best.lo, best.hi);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {best.volume, witness, DispersionResult::Mode::exact, boxes, secs};
}

namespace {

// Grows the degenerate box at `seed` to a maximal empty box: repeatedly take
// the bound with the largest available extension (ties: lowest axis, low side
// first) and move it to the nearest blocking coordinate or cube wall.
// Returns false if some axis could not be opened (seed coordinate pinned by
// blockers on both sides, only possible on exact coordinate collisions).
bool grow_maximal(const std::vector<double>& pts, std::size_t n, int d,
                  const std::vector<double>& seed, std::vector<double>& lo,
                  std::vector<double>& hi) {
  lo = seed;
  hi = seed;
  auto pcoord = [&](std::size_t p, int axis) {
    return pts[p * static_cast<std::size_t>(d) + static_cast<std::size_t>(axis)];
  };
  std::vector<double> low_target(static_cast<std::size_t>(d));
  std::vector<double> high_target(static_cast<std::size_t>(d));
  for (;;) {
    std::fill(low_target.begin(), low_target.end(), 0.0);
    std::fill(high_target.begin(), high_target.end(), 1.0);
    // A point blocks axis i iff i is its only outside axis; no point is ever
    // inside on all axes (bounds stop exactly at blocking coordinates).
    for (std::size_t p = 0; p < n; ++p) {
      int outside_axis = -1;
      bool multiple = false;
      for (int j = 0; j < d; ++j) {
        const double x = pcoord(p, j);
        if (!(lo[static_cast<std::size_t>(j)] < x && x < hi[static_cast<std::size_t>(j)])) {
          if (outside_axis >= 0) {
            multiple = true;
            break;
          }
          outside_axis = j;
        }
      }
      if (multiple || outside_axis < 0) continue;
      const auto a = static_cast<std::size_t>(outside_axis);
      const double x = pcoord(p, outside_axis);
      if (x <= lo[a])
        low_target[a] = std::max(low_target[a], x);
      else
        high_target[a] = std::min(high_target[a], x);
    }
    double best_ext = 0.0;
    int best_axis = -1;
    bool best_low = false;
    for (int axis = 0; axis < d; ++axis) {
      const auto a = static_cast<std::size_t>(axis);
      const double ext_low = lo[a] - low_target[a];
      if (ext_low > best_ext) {
        best_ext = ext_low;
        best_axis = axis;
        best_low = true;
      }
      const double ext_high = high_target[a] - hi[a];
      if (ext_high > best_ext) {
        best_ext = ext_high;
        best_axis = axis;
        best_low = false;
      }
    }
    if (best_axis < 0) break;
    if (best_low)
      lo[static_cast<std::size_t>(best_axis)] = low_target[static_cast<std::size_t>(best_axis)];
    else
      hi[static_cast<std::size_t>(best_axis)] = high_target[static_cast<std::size_t>(best_axis)];
  }
  for (int i = 0; i < d; ++i)
    if (!(lo[static_cast<std::size_t>(i)] < hi[static_cast<std::size_t>(i)])) return false;
  return true;
}

}  // namespace

DispersionResult estimate_dispersion(const PointSet& xs, const SearchConfig& cfg,
                                     std::span<const AxisBox> probe_boxes) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.estimator_budget < 1)
    throw usage_error("estimate_dispersion: estimator_budget must be >= 1");
  const int d = xs.dim();
  std::size_t n = 0;
  const std::vector<double> pts = dedup_points(xs, n);

  Candidate best;
  std::uint64_t boxes = 0;

  for (const AxisBox& probe : probe_boxes) {
    if (probe.dim() != d)
      throw usage_error("estimate_dispersion: probe box dimension mismatch");
    ++boxes;
    if (box_is_empty(probe, xs)) offer(best, box_volume(probe), probe.lo(), probe.hi());
  }

  Rng rng(cfg.rng_seed);
  std::vector<double> seed(static_cast<std::size_t>(d)), lo, hi;
  for (int s = 0; s < cfg.estimator_budget; ++s) {
    bool collides = true;
    int attempts = 0;
    while (collides) {
      for (auto& c : seed) c = rng.next_unit();
      collides = false;
      for (std::size_t p = 0; p < n && !collides; ++p) {
        bool eq = true;
        for (int j = 0; j < d && eq; ++j)
          eq = pts[p * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] ==
               seed[static_cast<std::size_t>(j)];
        collides = eq;
      }
      if (++attempts > 10000)
        throw internal_check_failure("estimate_dispersion: cannot draw a seed point off xs");
    }
    ++boxes;
    if (!grow_maximal(pts, n, d, seed, lo, hi)) continue;
    AxisBox grown(lo, hi);
    if (!box_is_empty(grown, xs))
      throw internal_check_failure("estimate_dispersion: grown box is not empty");
    offer(best, box_volume(grown), lo, hi);
  }

  if (!best.valid())
    throw internal_check_failure("estimate_dispersion: no candidate box produced");
  AxisBox witness(best.lo, best.hi);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {best.volume, witness, DispersionResult::Mode::lower_estimate, boxes, secs};
}

}  // namespace dispbox
