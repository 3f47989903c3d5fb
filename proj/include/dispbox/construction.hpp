#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dispbox/coverfree.hpp"
#include "dispbox/dyadic.hpp"
#include "dispbox/geometry.hpp"

namespace dispbox {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// The bucket determined by 2^{-(k+1)} < eps <= 2^{-k}: the cover-free order
/// r = 2^{k-2} and the exact coordinate threshold 2^{1-k}.
struct EpsilonBucket {
  double eps;
  int k;
  std::uint64_t r;
  Dyadic threshold;
};

// Requires 0 < eps <= 1/4 (so k >= 2); exact at dyadic eps, with eps = 2^{-k}
// mapping to k (the bucket is right-closed).
EpsilonBucket bucket_of_eps(double eps);

/// Compact (A, j, k) encoding of a structured test box: interval (0, 2^{1-k})
/// on axis j, (2^{1-k}, 1) on the axes in A, (0,1) elsewhere. Axes 0-based.
struct TestBoxSpec {
  int d;
  int k;
  std::vector<int> large_axes;  // A, sorted ascending, j not a member, size <= 2^{k-2}
  int small_axis;               // j

  TestBoxSpec(int d, int k, std::vector<int> large_axes, int small_axis);
};

AxisBox test_box(const TestBoxSpec& spec);

// Closed-form volume (1 - 2^{1-k})^{#A} * 2^{1-k}, exactly; equals
// box_volume_exact(test_box(spec)).
Dyadic test_box_volume(const TestBoxSpec& spec);

struct Claim1Check {
  bool holds;              // (1-2^{1-k})^a * 2^{1-k} >= 2^{-k} for all 0 <= a <= 2^{k-2}
  int worst_a;             // minimizing a
  Dyadic worst_volume;     // value at worst_a
  Dyadic eps_ceiling;      // 2^{-k}, the largest eps in the bucket
  bool convexity_grid_ok;  // (1-x) >= 2^{-2x} spot-checked on a grid of x in [0,1/2]
};

// Exact-arithmetic verification of the minimum test-box volume, by size of A
// (O(2^{k-2}) checks). Requires d >= 2, k >= 2, 2^{k-2} < d.
Claim1Check verify_claim1(int d, int k);

// C(d, 2^{k-2}) * (d - 2^{k-2}); throws cap_exceeded (with the computed or
// partial count) when above `cap`.
std::uint64_t test_family_size(int d, int k, std::uint64_t cap = kDefaultEnumerationCap);

/// Streams the full family: A over all 2^{k-2}-subsets of [d] in
/// colexicographic order, j ascending over the complement within each A.
class TestFamilyEnumerator {
 public:
  TestFamilyEnumerator(int d, int k, std::uint64_t cap = kDefaultEnumerationCap);

  std::uint64_t size() const { return size_; }
  // Writes the next spec and returns true, or returns false when exhausted.
  bool next(TestBoxSpec& out);

 private:
  int d_, k_, r_;
  std::uint64_t size_;
  std::vector<int> a_;
  int j_;  // next small axis candidate; -1 before first call
  bool done_ = false;
};

struct PatternOptions {
  // Fault-injection hook: compare the small side non-strictly (coordinate <=
  // threshold instead of <). Claim-2 mutation testing only.
  bool nonstrict_small = false;
};

struct HitCheck {
  bool all_hit;
  std::uint64_t family_size;
  std::optional<TestBoxSpec> missing;  // witness when all_hit is false
};

// True iff every box of the family contains a point of xs. Pattern-based: a
// point x hits B^{A,j} iff j is in S(x) = {i : x_i < 2^{1-k}} and A is a
// subset of L(x) = {i : x_i > 2^{1-k}}; coordinates exactly at the threshold
// hit no box through that axis. Never tests boxes geometrically.
HitCheck hits_all(const PointSet& xs, int k, std::uint64_t cap = kDefaultEnumerationCap,
                  PatternOptions opts = {}, int workers = 0);

// Small axes j for which at least one box B^{A,j} is unhit, ascending.
// Empty iff hits_all; adding one point with singleton pattern {j} per returned
// axis always repairs the set.
std::vector<int> unhit_small_axes(const PointSet& xs, int k,
                                  std::uint64_t cap = kDefaultEnumerationCap);

// F_j = indices of points with j-th coordinate strictly below 2^{1-k};
// ground set = point indices of xs.
SetFamily extract_family(const PointSet& xs, int k);

// Main lower bound c * log d / (eps^2 * log(1/eps)); requires d >= 2 and
// 1/4 >= eps >= 1/(4*sqrt(d)). Base-invariant; natural logs.
double lower_bound_main(double eps, int d, double c = 1.0 / 1920.0);

// (1/10) * 2^{2k-4} * log(d - 2^{k-3}) / log(2^{k-2}) for k >= 3; this is
// alon_asodi_bound(d, 2^{k-2}).
double intermediate_cover_bound(int k, int d);

struct BoundConstants {
  std::optional<double> bc_upper;      // C in the Bukh-Chao upper bound
  std::optional<double> uvl_upper;     // C in the UV-Litvak upper bound
  std::optional<double> corollary_c1;  // validity constant: requires n <= c1*d
  std::optional<double> corollary_c2;  // scale constant of the dispersion corollary
  std::optional<std::int64_t> n;       // point count for the corollary
};

struct BoundValue {
  std::string name;
  double value;
  bool is_lower;        // lower bound on N(eps,d) (or on disp* for the corollary)
  bool paper_constant;  // false when the constant is caller-supplied
  std::string note;
};

// Reference bounds: trivial 1/eps - 1 and AHR log2(d)/(8 eps) always (AHR only
// for eps < 1/4, its stated range); Bukh-Chao C d^2 log d / eps, UV-Litvak
// C log d log(1/eps) / eps^2 and the dispersion corollary only with
// caller-supplied constants.
std::vector<BoundValue> reference_bounds(double eps, int d, const BoundConstants& c = {});

struct ReductionReport {
  int d = 0;
  double eps = 0.0;
  int k = 0;
  std::uint64_t r = 0;
  std::uint64_t family_size = 0;
  std::size_t n = 0;
  bool hits_all = false;
  std::optional<TestBoxSpec> missing_box;
  std::optional<CoverFreeCertificate> certificate;  // present iff hits_all
  double main_lower = 0.0;                          // c = 1/1920
  double trivial_lower = 0.0;
  std::optional<double> ahr_lower;           // absent at eps = 1/4
  std::optional<double> intermediate_aa;     // k >= 3 only
  bool exceeds_main = false;
  bool exceeds_trivial = false;
  std::optional<bool> exceeds_ahr;
  std::optional<bool> exceeds_intermediate;
  // hits_all true but certificate refuted; impossible if the implementation is
  // sound, reported as a hard internal error by callers.
  bool claim2_violation = false;
};

// End-to-end pipeline: bucket, hit check, family extraction, cover-free
// certification at r = 2^{k-2}, and all bound comparisons.
ReductionReport run_reduction(const PointSet& xs, double eps,
                              std::uint64_t cap = kDefaultEnumerationCap, int workers = 0);

}  // namespace dispbox
