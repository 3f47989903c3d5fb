#include "dispbox/construction.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

#include "dispbox/errors.hpp"
#include "dispbox/generators.hpp"
#include "dispbox/rng.hpp"
#include "oracles.hpp"

using namespace dispbox;

TEST_CASE("bucket_of_eps") {
  const EpsilonBucket b1 = bucket_of_eps(0.25);
  CHECK(b1.k == 2);
  CHECK(b1.r == 1);
  CHECK(b1.threshold == Dyadic(1, 1));  // 1/2

  const EpsilonBucket b2 = bucket_of_eps(0.125);  // dyadic boundary: inclusive on the right
  CHECK(b2.k == 3);
  CHECK(b2.r == 2);
  CHECK(b2.threshold == Dyadic(1, 2));  // 1/4

  CHECK(bucket_of_eps(0.1).k == 3);  // 1/16 < 0.1 <= 1/8
  CHECK(bucket_of_eps(0.0625).k == 4);
}

TEST_CASE("bucket_of_eps rejects out-of-range eps") {
  CHECK_THROWS_AS(bucket_of_eps(0.3), usage_error);
  CHECK_THROWS_AS(bucket_of_eps(0.0), usage_error);
  CHECK_THROWS_AS(bucket_of_eps(-0.1), usage_error);
}

TEST_CASE("TestBoxSpec invariants") {
  CHECK_THROWS_AS(TestBoxSpec(4, 3, {1, 2}, 1), usage_error);   // j in A
  CHECK_THROWS_AS(TestBoxSpec(4, 3, {1, 2, 3}, 0), usage_error);  // |A| > 2^{k-2}
  CHECK_THROWS_AS(TestBoxSpec(4, 3, {2, 1}, 0), usage_error);   // unsorted
  CHECK_THROWS_AS(TestBoxSpec(4, 3, {1, 4}, 0), usage_error);   // out of range
  CHECK_THROWS_AS(TestBoxSpec(4, 3, {}, 4), usage_error);
}

TEST_CASE("test_box matches the three interval kinds") {
  // Small axis 0, large axes {1,2}, free axis 3 (k=3, threshold 1/4).
  const AxisBox b = test_box(TestBoxSpec(4, 3, {1, 2}, 0));
  CHECK(b == AxisBox({0, 0.25, 0.25, 0}, {0.25, 1, 1, 1}));
  CHECK(box_volume(b) == 0.140625);  // 9/64

  const AxisBox b2 = test_box(TestBoxSpec(2, 2, {1}, 0));
  CHECK(b2 == AxisBox({0, 0.5}, {0.5, 1}));
  CHECK(box_volume(b2) == 0.25);

  const AxisBox b3 = test_box(TestBoxSpec(3, 2, {}, 1));
  CHECK(b3 == AxisBox({0, 0, 0}, {1, 0.5, 1}));
  CHECK(box_volume(b3) == 0.5);
}

TEST_CASE("test_box_volume equals the geometric volume exactly") {
  CHECK(test_box_volume(TestBoxSpec(4, 3, {1, 2}, 0)) == Dyadic(9, 6));
  CHECK(test_box_volume(TestBoxSpec(2, 2, {1}, 0)) == Dyadic(1, 2));
  CHECK(test_box_volume(TestBoxSpec(5, 4, {}, 2)) == Dyadic::pow2(-3));  // #A=0: 2^{1-k}
  Rng rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 2 + static_cast<int>(rng.next_below(3));
    const int r = 1 << (k - 2);
    const int d = r + 1 + static_cast<int>(rng.next_below(8));
    std::vector<int> axes(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) axes[static_cast<std::size_t>(i)] = i;
    for (int i = d - 1; i > 0; --i)
      std::swap(axes[static_cast<std::size_t>(i)],
                axes[static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(i + 1)))]);
    const int na = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(r) + 1));
    std::vector<int> a(axes.begin(), axes.begin() + na);
    std::sort(a.begin(), a.end());
    const TestBoxSpec spec(d, k, a, axes[static_cast<std::size_t>(na)]);
    CHECK(test_box_volume(spec) == box_volume_exact(test_box(spec)));
  }
}

TEST_CASE("verify_claim1 exact scan") {
  const Claim1Check c8 = verify_claim1(8, 3);
  CHECK(c8.holds);
  CHECK(c8.worst_a == 2);
  CHECK(c8.worst_volume == Dyadic(9, 6));
  CHECK(c8.convexity_grid_ok);

  // The k=4 direct-value oracle: minimum at a=4 is 2401/2^15, above 1/16.
  const Claim1Check c16 = verify_claim1(16, 4);
  CHECK(c16.holds);
  CHECK(c16.worst_a == 4);
  CHECK(c16.worst_volume == Dyadic(2401, 15));
  CHECK(c16.worst_volume >= Dyadic::pow2(-4));

  const Claim1Check c4 = verify_claim1(4, 2);
  CHECK(c4.holds);
  CHECK(c4.worst_a == 1);
  CHECK(c4.worst_volume == Dyadic(1, 2) * Dyadic(1, 1));

  CHECK_THROWS_AS(verify_claim1(4, 4), usage_error);  // 2^{k-2} = 4 >= d
  CHECK_THROWS_AS(verify_claim1(1, 2), usage_error);
}

TEST_CASE("family enumeration: counts and order") {
  CHECK(test_family_size(8, 4) == 280);  // C(8,4)*4
  CHECK(test_family_size(5, 2) == 20);   // C(5,1)*4
  CHECK(test_family_size(2, 2) == 2);

  TestFamilyEnumerator en(3, 2);
  TestBoxSpec s(3, 2, {}, 0);
  std::vector<std::pair<std::vector<int>, int>> seen;
  while (en.next(s)) seen.emplace_back(s.large_axes, s.small_axis);
  const std::vector<std::pair<std::vector<int>, int>> expected{
      {{0}, 1}, {{0}, 2}, {{1}, 0}, {{1}, 2}, {{2}, 0}, {{2}, 1}};
  CHECK(seen == expected);  // A colex, j ascending

  TestFamilyEnumerator big(8, 3);
  std::set<std::pair<std::vector<int>, int>> unique_specs;
  std::uint64_t count = 0;
  while (big.next(s)) {
    CHECK(unique_specs.emplace(s.large_axes, s.small_axis).second);
    ++count;
  }
  CHECK(count == test_family_size(8, 3));
  CHECK(count == big.size());
}

TEST_CASE("enumeration cap refusal includes the computed count") {
  CHECK_THROWS_AS(test_family_size(26, 6), cap_exceeded);
  CHECK_THROWS_WITH_AS(test_family_size(40, 2, 100), doctest::Contains("1560"),
                       cap_exceeded);  // C(40,1)*39 = 1560 > 100
}

TEST_CASE("hits_all: pattern examples") {
  // Point p has coordinate p small, everything else large (k=2).
  for (int d : {2, 3, 5}) {
    std::vector<Point> pts;
    for (int p = 0; p < d; ++p) {
      Point x(static_cast<std::size_t>(d), 0.75);
      x[static_cast<std::size_t>(p)] = 0.25;
      pts.push_back(x);
    }
    const HitCheck hc = hits_all(PointSet::from_points(d, pts), 2);
    CHECK(hc.all_hit);
  }

  PointSet empty(4);
  const HitCheck miss = hits_all(empty, 3);
  CHECK(!miss.all_hit);
  REQUIRE(miss.missing.has_value());
  CHECK(miss.missing->large_axes == std::vector<int>{0, 1});  // first A in colex order
  CHECK(miss.missing->small_axis == 2);                       // first j outside A

  // A single point at the all-large corner has an empty small pattern.
  const PointSet corner = PointSet::from_points(3, {{0.75, 0.75, 0.75}});
  CHECK(!hits_all(corner, 2).all_hit);

  // All-small points hit no box with nonempty A.
  const PointSet allsmall = PointSet::from_points(3, {{0.25, 0.25, 0.25}});
  CHECK(!hits_all(allsmall, 2).all_hit);
}

TEST_CASE("hits_all equals the geometric check") {
  Rng rng(44);
  for (int trial = 0; trial < 25; ++trial) {
    const int k = 2 + static_cast<int>(rng.next_below(2));
    const int r = 1 << (k - 2);
    const int d = r + 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(6 - r)));
    const int n = static_cast<int>(rng.next_below(40));
    const PointSet xs = trial % 2 == 0
                            ? oracle::random_points(n, d, rng.next_u64())
                            : superimposed_points(d, k, n, std::nullopt, rng.next_u64());
    CHECK(hits_all(xs, k).all_hit == oracle::geometric_hits_all(xs, k));
  }
}

TEST_CASE("threshold coordinates hit nothing unless the fault is injected") {
  // Coordinate exactly at 2^{1-k}: in no small pattern, in no large pattern.
  const PointSet at = PointSet::from_points(2, {{0.5, 0.75}, {0.75, 0.5}});
  CHECK(!hits_all(at, 2).all_hit);
  PatternOptions fault;
  fault.nonstrict_small = true;
  CHECK(hits_all(at, 2, kDefaultEnumerationCap, fault).all_hit);
}

TEST_CASE("unhit_small_axes") {
  PointSet empty(3);
  CHECK(unhit_small_axes(empty, 2) == std::vector<int>{0, 1, 2});

  // Only axis 2 lacks a small coordinate.
  std::vector<Point> pts;
  for (int p = 0; p < 2; ++p) {
    Point x(3, 0.75);
    x[static_cast<std::size_t>(p)] = 0.25;
    pts.push_back(x);
  }
  CHECK(unhit_small_axes(PointSet::from_points(3, pts), 2) == std::vector<int>{2});

  const PointSet hitting = greedy_hitting(4, 2);
  CHECK(unhit_small_axes(hitting, 2).empty());
}

TEST_CASE("extract_family uses the strict threshold") {
  const PointSet xs = PointSet::from_points(3, {{0.1, 0.9, 0.3}});
  const SetFamily fam = extract_family(xs, 3);  // threshold 1/4
  REQUIRE(fam.d() == 3);
  CHECK(fam.ground_size == 1);
  CHECK(fam.sets[0] == std::vector<int>{0});
  CHECK(fam.sets[1].empty());
  CHECK(fam.sets[2].empty());

  const PointSet at = PointSet::from_points(2, {{0.25, 0.1}});
  const SetFamily fam2 = extract_family(at, 3);
  CHECK(fam2.sets[0].empty());  // exactly at the threshold: excluded
  CHECK(fam2.sets[1] == std::vector<int>{0});

  PointSet none(4);
  const SetFamily fam3 = extract_family(none, 2);
  CHECK(fam3.ground_size == 0);
  for (const auto& s : fam3.sets) CHECK(s.empty());
}

TEST_CASE("lower_bound_main values and range checks") {
  CHECK(lower_bound_main(0.125, 256) == doctest::Approx(8.0 / 90.0).epsilon(1e-12));
  CHECK(lower_bound_main(0.25, 2) == doctest::Approx(1.0 / 240.0).epsilon(1e-12));
  CHECK(lower_bound_main(0.125, 16) == doctest::Approx(2.0 / 45.0).epsilon(1e-12));
  CHECK_THROWS_WITH_AS(lower_bound_main(0.1, 4), doctest::Contains("1/(4*sqrt(d))"),
                       usage_error);
  CHECK_THROWS_WITH_AS(lower_bound_main(0.3, 16), doctest::Contains("eps <= 1/4"),
                       usage_error);
  CHECK_THROWS_AS(lower_bound_main(0.25, 1), usage_error);
  // Boundary: eps = 1/(4 sqrt(d)) exactly, for square d.
  CHECK(lower_bound_main(0.125, 4) > 0.0);
  CHECK(lower_bound_main(0.0625, 16) > 0.0);
}

TEST_CASE("lower_bound_main is log-base invariant") {
  for (const auto& [eps, d] : std::vector<std::pair<double, int>>{
           {0.25, 7}, {0.125, 30}, {0.0625, 300}}) {
    const double nat = lower_bound_main(eps, d);
    const double base2 =
        (1.0 / 1920.0) * std::log2(static_cast<double>(d)) / (eps * eps * std::log2(1.0 / eps));
    CHECK(nat == doctest::Approx(base2).epsilon(1e-12));
  }
}

TEST_CASE("intermediate cover bound") {
  CHECK(intermediate_cover_bound(3, 8) == doctest::Approx(1.1229419688230416).epsilon(1e-12));
  CHECK(intermediate_cover_bound(3, 16) == doctest::Approx(1.5627562382434074).epsilon(1e-12));
  CHECK(intermediate_cover_bound(3, 32) == doctest::Approx(1.9816785241547501).epsilon(1e-12));
  CHECK(intermediate_cover_bound(3, 16) == alon_asodi_bound(16, 2));
  CHECK_THROWS_AS(intermediate_cover_bound(2, 16), usage_error);
}

TEST_CASE("reference_bounds") {
  const auto basic = reference_bounds(0.25, 16);
  REQUIRE(basic.size() == 1);  // AHR excluded at eps = 1/4
  CHECK(basic[0].name == "trivial");
  CHECK(basic[0].value == 3.0);
  CHECK(basic[0].paper_constant);

  const auto ahr = reference_bounds(0.125, 16);
  REQUIRE(ahr.size() == 2);
  CHECK(ahr[1].name == "ahr");
  CHECK(ahr[1].value == 4.0);  // log2(16)/(8*1/8)

  BoundConstants consts;
  consts.bc_upper = 1.0;
  consts.uvl_upper = 1.0;
  consts.corollary_c2 = 1.0;
  consts.corollary_c1 = 1.0;
  consts.n = 64;
  const auto full = reference_bounds(0.125, 16, consts);
  REQUIRE(full.size() == 5);
  CHECK(full[2].name == "bukh_chao");
  CHECK(!full[2].paper_constant);
  CHECK(full[2].value ==
        doctest::Approx(256.0 * std::log(16.0) / 0.125).epsilon(1e-12));
  CHECK(full[3].name == "uvl");
  CHECK(full[3].value ==
        doctest::Approx(std::log(16.0) * std::log(8.0) / (0.125 * 0.125)).epsilon(1e-12));
  CHECK(full[4].name == "corollary");
  CHECK(full[4].value == doctest::Approx(0.11747624331451292).epsilon(1e-12));

  CHECK_THROWS_AS(reference_bounds(0.0, 4), usage_error);
  CHECK_THROWS_AS(reference_bounds(1.0, 4), usage_error);
}

TEST_CASE("run_reduction end to end on a hitting set") {
  const PointSet xs = superimposed_points(16, 3, 200, 1.0 / 3.0, 12345);
  const ReductionReport rep = run_reduction(xs, 0.125);
  CHECK(rep.k == 3);
  CHECK(rep.r == 2);
  CHECK(rep.family_size == test_family_size(16, 3));
  if (rep.hits_all) {
    REQUIRE(rep.certificate.has_value());
    CHECK(rep.certificate->certified);
    CHECK(!rep.claim2_violation);
    CHECK(rep.exceeds_main);
    REQUIRE(rep.intermediate_aa.has_value());
    CHECK(*rep.intermediate_aa == doctest::Approx(1.5627562382434074).epsilon(1e-12));
    CHECK(rep.exceeds_intermediate.value());
  }
  CHECK(rep.main_lower == doctest::Approx(2.0 / 45.0).epsilon(1e-12));
}

TEST_CASE("run_reduction on an empty set reports the missing box") {
  PointSet empty(4);
  const ReductionReport rep = run_reduction(empty, 0.25);
  CHECK(!rep.hits_all);
  REQUIRE(rep.missing_box.has_value());
  CHECK(!rep.certificate.has_value());
  CHECK(!rep.claim2_violation);
}

TEST_CASE("run_reduction small k=2 case") {
  // d=4, k=2: singleton small patterns per axis hit everything.
  std::vector<Point> pts;
  for (int p = 0; p < 4; ++p) {
    Point x(4, 0.75);
    x[static_cast<std::size_t>(p)] = 0.25;
    pts.push_back(x);
  }
  const ReductionReport rep = run_reduction(PointSet::from_points(4, pts), 0.25);
  CHECK(rep.hits_all);
  CHECK(rep.k == 2);
  REQUIRE(rep.certificate.has_value());
  CHECK(rep.certificate->r == 1);
  CHECK(rep.certificate->certified);
  CHECK(rep.n >= 2);
  CHECK(!rep.intermediate_aa.has_value());  // k=2 has no intermediate bound
  CHECK(!rep.ahr_lower.has_value());        // AHR needs eps < 1/4
}
