#include "dispbox/construction.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "dispbox/bitset64.hpp"
#include "dispbox/combinatorics.hpp"
#include "dispbox/errors.hpp"

namespace dispbox {

EpsilonBucket bucket_of_eps(double eps) {
  if (!(eps > 0.0 && eps <= 0.25))
    throw usage_error("bucket_of_eps: eps must satisfy 0 < eps <= 1/4, got " +
                      std::to_string(eps));
  int e;
  const double f = std::frexp(eps, &e);  // eps = f * 2^e, f in [0.5, 1)
  const int k = (f == 0.5) ? 1 - e : -e;
  // 2^{-(k+1)} < eps <= 2^{-k} by construction; k >= 2 since eps <= 1/4.
  return {eps, k, std::uint64_t(1) << (k - 2), Dyadic::pow2(1 - k)};
}

TestBoxSpec::TestBoxSpec(int d_in, int k_in, std::vector<int> large, int small)
    : d(d_in), k(k_in), large_axes(std::move(large)), small_axis(small) {
  if (d < 2 || k < 2) throw usage_error("TestBoxSpec: need d >= 2 and k >= 2");
  if (k - 2 >= 62) throw usage_error("TestBoxSpec: k too large");
  if (small_axis < 0 || small_axis >= d)
    throw usage_error("TestBoxSpec: small axis out of range");
  const std::uint64_t r = std::uint64_t(1) << (k - 2);
  if (large_axes.size() > r)
    throw usage_error("TestBoxSpec: |A| = " + std::to_string(large_axes.size()) +
                      " exceeds 2^{k-2} = " + std::to_string(r));
  if (!std::is_sorted(large_axes.begin(), large_axes.end()) ||
      std::adjacent_find(large_axes.begin(), large_axes.end()) != large_axes.end())
    throw usage_error("TestBoxSpec: A must be sorted and duplicate-free");
  for (int i : large_axes) {
    if (i < 0 || i >= d) throw usage_error("TestBoxSpec: axis in A out of range");
    if (i == small_axis) throw usage_error("TestBoxSpec: small axis must not be in A");
  }
}

AxisBox test_box(const TestBoxSpec& spec) {
  const double t = std::ldexp(1.0, 1 - spec.k);  // 2^{1-k}, exact in binary64
  std::vector<double> lo(static_cast<std::size_t>(spec.d), 0.0);
  std::vector<double> hi(static_cast<std::size_t>(spec.d), 1.0);
  hi[static_cast<std::size_t>(spec.small_axis)] = t;
  for (int i : spec.large_axes) lo[static_cast<std::size_t>(i)] = t;
  return AxisBox(std::move(lo), std::move(hi));
}

Dyadic test_box_volume(const TestBoxSpec& spec) {
  const Dyadic t = Dyadic::pow2(1 - spec.k);
  return (Dyadic::one() - t).pow(spec.large_axes.size()) * t;
}

Claim1Check verify_claim1(int d, int k) {
  if (d < 2) throw usage_error("verify_claim1: d >= 2 violated");
  if (k < 2) throw usage_error("verify_claim1: k >= 2 violated");
  if (k - 2 >= 62 || (std::uint64_t(1) << (k - 2)) >= static_cast<std::uint64_t>(d))
    throw usage_error("verify_claim1: 2^{k-2} < d violated (k=" + std::to_string(k) +
                      ", d=" + std::to_string(d) + ")");
  const std::uint64_t r = std::uint64_t(1) << (k - 2);
  const Dyadic t = Dyadic::pow2(1 - k);
  const Dyadic floor = Dyadic::pow2(-k);
  const Dyadic side = Dyadic::one() - t;

  Claim1Check out{true, 0, Dyadic::one(), floor, true};
  Dyadic v = t;  // a = 0
  out.worst_a = 0;
  out.worst_volume = v;
  for (std::uint64_t a = 1; a <= r; ++a) {
    v = v * side;
    if (v < out.worst_volume) {
      out.worst_volume = v;
      out.worst_a = static_cast<int>(a);
    }
  }
  out.holds = out.worst_volume >= floor;

  // Spot check of the convexity step (1 - x) >= 2^{-2x} on x in [0, 1/2].
  for (int i = 0; i <= 512; ++i) {
    const double x = static_cast<double>(i) / 1024.0;
    if (!(1.0 - x >= std::exp2(-2.0 * x))) {
      out.convexity_grid_ok = false;
      break;
    }
  }
  return out;
}

std::uint64_t test_family_size(int d, int k, std::uint64_t cap) {
  if (d < 2 || k < 2) throw usage_error("test_family_size: need d >= 2 and k >= 2");
  if (k - 2 >= 62 || (std::uint64_t(1) << (k - 2)) >= static_cast<std::uint64_t>(d))
    throw usage_error("test_family_size: 2^{k-2} < d violated (k=" + std::to_string(k) +
                      ", d=" + std::to_string(d) + ")");
  const std::uint64_t r = std::uint64_t(1) << (k - 2);
  const std::uint64_t rest = static_cast<std::uint64_t>(d) - r;
  const auto choose = checked_binomial(static_cast<std::uint64_t>(d), r, cap);
  if (!choose || *choose > cap / rest)
    throw cap_exceeded("test family for d=" + std::to_string(d) + ", k=" + std::to_string(k) +
                       " has C(d,2^{k-2})*(d-2^{k-2}) " +
                       (choose ? "= " + std::to_string(*choose * rest) : "> " + std::to_string(cap)) +
                       " boxes, above the cap of " + std::to_string(cap));
  return *choose * rest;
}

TestFamilyEnumerator::TestFamilyEnumerator(int d, int k, std::uint64_t cap)
    : d_(d), k_(k), r_(0), size_(test_family_size(d, k, cap)), j_(-1) {
  r_ = static_cast<int>(std::uint64_t(1) << (k - 2));
  a_.resize(static_cast<std::size_t>(r_));
  for (int i = 0; i < r_; ++i) a_[static_cast<std::size_t>(i)] = i;
}

bool TestFamilyEnumerator::next(TestBoxSpec& out) {
  if (done_) return false;
  auto in_a = [&](int j) {
    return std::binary_search(a_.begin(), a_.end(), j);
  };
  int j = j_ + 1;
  while (j < d_ && in_a(j)) ++j;
  if (j >= d_) {
    if (!next_colex_subset(a_, d_)) {
      done_ = true;
      return false;
    }
    j_ = -1;
    return next(out);
  }
  j_ = j;
  out = TestBoxSpec(d_, k_, a_, j);
  return true;
}

namespace {

struct PointPattern {
  Bitset64 small;  // S(x): coordinates strictly below the threshold
  Bitset64 large;  // L(x): coordinates strictly above the threshold
};

std::vector<PointPattern> point_patterns(const PointSet& xs, int k, PatternOptions opts) {
  const int d = xs.dim();
  const double t = std::ldexp(1.0, 1 - k);
  std::vector<PointPattern> ps;
  ps.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    PointPattern p{Bitset64(static_cast<std::size_t>(d)), Bitset64(static_cast<std::size_t>(d))};
    for (int j = 0; j < d; ++j) {
      const double x = xs.coord(i, j);
      const bool small = opts.nonstrict_small ? (x <= t) : (x < t);
      if (small) p.small.set(static_cast<std::size_t>(j));
      if (x > t) p.large.set(static_cast<std::size_t>(j));
    }
    ps.push_back(std::move(p));
  }
  return ps;
}

// First missing (A_rank-major, j-minor) spec in a colex rank range, or nullopt.
std::optional<std::pair<std::uint64_t, int>> scan_missing(
    const std::vector<PointPattern>& ps, int d, int r, std::uint64_t rank_begin,
    std::uint64_t rank_end) {
  std::vector<int> a = colex_unrank(rank_begin, r, d);
  for (std::uint64_t rank = rank_begin; rank < rank_end; ++rank) {
    Bitset64 a_mask(static_cast<std::size_t>(d));
    for (int i : a) a_mask.set(static_cast<std::size_t>(i));
    Bitset64 covered(static_cast<std::size_t>(d));
    for (const auto& p : ps) {
      if (a_mask.is_subset_of(p.large)) covered |= p.small;
    }
    for (int j = 0; j < d; ++j) {
      if (a_mask.test(static_cast<std::size_t>(j))) continue;
      if (!covered.test(static_cast<std::size_t>(j))) return std::make_pair(rank, j);
    }
    if (!next_colex_subset(a, d)) break;
  }
  return std::nullopt;
}

}  // namespace

HitCheck hits_all(const PointSet& xs, int k, std::uint64_t cap, PatternOptions opts,
                  int workers) {
  const int d = xs.dim();
  const std::uint64_t family = test_family_size(d, k, cap);
  const int r = static_cast<int>(std::uint64_t(1) << (k - 2));
  const std::uint64_t a_count = family / static_cast<std::uint64_t>(d - r);

  const auto ps = point_patterns(xs, k, opts);

  unsigned hw = workers > 0 ? static_cast<unsigned>(workers)
                            : std::max(1u, std::thread::hardware_concurrency());
  const unsigned nthreads = static_cast<unsigned>(std::min<std::uint64_t>(
      hw, std::max<std::uint64_t>(1, a_count / 1024)));

  std::optional<std::pair<std::uint64_t, int>> missing;
  if (nthreads <= 1) {
    missing = scan_missing(ps, d, r, 0, a_count);
  } else {
    std::vector<std::optional<std::pair<std::uint64_t, int>>> results(nthreads);
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < nthreads; ++w) {
      const std::uint64_t b = a_count * w / nthreads;
      const std::uint64_t e = a_count * (w + 1) / nthreads;
      threads.emplace_back([&, w, b, e] { results[w] = scan_missing(ps, d, r, b, e); });
    }
    for (auto& t : threads) t.join();
    for (const auto& res : results) {
      if (res && (!missing || res->first < missing->first ||
                  (res->first == missing->first && res->second < missing->second)))
        missing = res;
    }
  }

  HitCheck out{!missing.has_value(), family, std::nullopt};
  if (missing) {
    out.missing = TestBoxSpec(d, k, colex_unrank(missing->first, r, d), missing->second);
  }
  return out;
}

std::vector<int> unhit_small_axes(const PointSet& xs, int k, std::uint64_t cap) {
  const int d = xs.dim();
  const std::uint64_t family = test_family_size(d, k, cap);
  const int r = static_cast<int>(std::uint64_t(1) << (k - 2));
  const std::uint64_t a_count = family / static_cast<std::uint64_t>(d - r);
  const auto ps = point_patterns(xs, k, {});

  Bitset64 missing(static_cast<std::size_t>(d));
  std::vector<int> a(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) a[static_cast<std::size_t>(i)] = i;
  for (std::uint64_t rank = 0; rank < a_count; ++rank) {
    Bitset64 a_mask(static_cast<std::size_t>(d));
    for (int i : a) a_mask.set(static_cast<std::size_t>(i));
    Bitset64 covered(static_cast<std::size_t>(d));
    for (const auto& p : ps)
      if (a_mask.is_subset_of(p.large)) covered |= p.small;
    for (int j = 0; j < d; ++j)
      if (!a_mask.test(static_cast<std::size_t>(j)) && !covered.test(static_cast<std::size_t>(j)))
        missing.set(static_cast<std::size_t>(j));
    if (!next_colex_subset(a, d)) break;
  }
  std::vector<int> out;
  missing.for_each_set([&](std::size_t j) { out.push_back(static_cast<int>(j)); });
  return out;
}

SetFamily extract_family(const PointSet& xs, int k) {
  const int d = xs.dim();
  const double t = std::ldexp(1.0, 1 - k);
  SetFamily fam;
  fam.ground_size = static_cast<int>(xs.size());
  fam.sets.resize(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (int j = 0; j < d; ++j) {
      if (xs.coord(i, j) < t) fam.sets[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
    }
  }
  return fam;
}

double lower_bound_main(double eps, int d, double c) {
  if (d < 2) throw usage_error("lower_bound_main: d >= 2 violated (d=" + std::to_string(d) + ")");
  if (!(eps <= 0.25))
    throw usage_error("lower_bound_main: eps <= 1/4 violated (eps=" + std::to_string(eps) + ")");
  if (!(16.0 * d * eps * eps >= 1.0))
    throw usage_error("lower_bound_main: eps >= 1/(4*sqrt(d)) violated (eps=" +
                      std::to_string(eps) + ", d=" + std::to_string(d) + ")");
  return c * std::log(static_cast<double>(d)) / (eps * eps * std::log(1.0 / eps));
}

double intermediate_cover_bound(int k, int d) {
  if (k < 3) throw usage_error("intermediate_cover_bound: k >= 3 violated");
  return alon_asodi_bound(d, static_cast<int>(std::uint64_t(1) << (k - 2)));
}

std::vector<BoundValue> reference_bounds(double eps, int d, const BoundConstants& c) {
  if (!(eps > 0.0 && eps < 1.0))
    throw usage_error("reference_bounds: eps must be in (0,1), got " + std::to_string(eps));
  if (d < 2) throw usage_error("reference_bounds: d >= 2 violated");
  std::vector<BoundValue> out;
  out.push_back({"trivial", 1.0 / eps - 1.0, true, true, "N(eps,d) >= 1/eps - 1"});
  if (eps < 0.25) {
    out.push_back({"ahr", std::log2(static_cast<double>(d)) / (8.0 * eps), true, true,
                   "N(eps,d) >= log2(d)/(8 eps), for 0 < eps < 1/4"});
  }
  if (c.bc_upper) {
    out.push_back({"bukh_chao",
                   *c.bc_upper * static_cast<double>(d) * static_cast<double>(d) *
                       std::log(static_cast<double>(d)) / eps,
                   false, false, "N(eps,d) <= C d^2 log d / eps, C caller-supplied"});
  }
  if (c.uvl_upper) {
    out.push_back({"uvl",
                   *c.uvl_upper * std::log(static_cast<double>(d)) * std::log(1.0 / eps) /
                       (eps * eps),
                   false, false, "N(eps,d) <= C log d log(1/eps) / eps^2, C caller-supplied"});
  }
  if (c.corollary_c2 && c.n) {
    const double n = static_cast<double>(*c.n);
    const double logd = std::log(static_cast<double>(d));
    std::string note =
        "disp*(n,d) >= c2 (log d / n)^{1/2} (log(n/log d))^{-1/2}, constants caller-supplied";
    if (n <= 2.0 * logd || std::log(n / logd) <= 0.0) {
      note += "; outside validity range n > 2 log d";
      out.push_back({"corollary", 0.0, true, false, note});
    } else {
      if (c.corollary_c1 && n > *c.corollary_c1 * static_cast<double>(d))
        note += "; n <= c1*d violated";
      out.push_back({"corollary",
                     *c.corollary_c2 * std::sqrt(logd / n) / std::sqrt(std::log(n / logd)),
                     true, false, note});
    }
  }
  return out;
}

ReductionReport run_reduction(const PointSet& xs, double eps, std::uint64_t cap, int workers) {
  const int d = xs.dim();
  const EpsilonBucket bucket = bucket_of_eps(eps);

  ReductionReport rep;
  rep.d = d;
  rep.eps = eps;
  rep.k = bucket.k;
  rep.r = bucket.r;
  rep.n = xs.size();
  rep.main_lower = lower_bound_main(eps, d);  // validates the Theorem-1 range
  rep.trivial_lower = 1.0 / eps - 1.0;
  if (eps < 0.25) rep.ahr_lower = std::log2(static_cast<double>(d)) / (8.0 * eps);
  if (bucket.k >= 3) rep.intermediate_aa = intermediate_cover_bound(bucket.k, d);

  const HitCheck hit = hits_all(xs, bucket.k, cap, {}, workers);
  rep.family_size = hit.family_size;
  rep.hits_all = hit.all_hit;
  rep.missing_box = hit.missing;

  if (hit.all_hit) {
    const SetFamily fam = extract_family(xs, bucket.k);
    rep.certificate = certify_cover_free(fam, static_cast<int>(bucket.r), workers);
    rep.claim2_violation = !rep.certificate->certified;
  }

  const double n = static_cast<double>(rep.n);
  rep.exceeds_main = n > rep.main_lower;
  rep.exceeds_trivial = n > rep.trivial_lower;
  if (rep.ahr_lower) rep.exceeds_ahr = n > *rep.ahr_lower;
  if (rep.intermediate_aa) rep.exceeds_intermediate = n > *rep.intermediate_aa;
  return rep;
}

}  // namespace dispbox
