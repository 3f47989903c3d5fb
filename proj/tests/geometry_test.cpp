#include "dispbox/geometry.hpp"

#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "dispbox/errors.hpp"
#include "dispbox/rng.hpp"
#include "oracles.hpp"

using namespace dispbox;

TEST_CASE("box_volume basics") {
  CHECK(box_volume(AxisBox({0, 0}, {1, 1})) == 1.0);
  CHECK(box_volume(AxisBox({0}, {0.5})) == 0.5);
  const AxisBox b({0, 0.25, 0.25}, {0.25, 1, 1});
  CHECK(box_volume(b) == 0.140625);  // 9/64, exact as dyadics
  CHECK(box_volume_exact(b) == Dyadic(9, 6));
}

TEST_CASE("volume cross-checked by Monte-Carlo estimate") {
  const AxisBox b({0, 0.25, 0.25}, {0.25, 1, 1});
  const double mc = oracle::mc_volume(b, 200000, 42);
  CHECK(std::abs(mc - 0.140625) < 0.005);
}

TEST_CASE("box_contains is strictly open") {
  const AxisBox b({0, 0.25}, {0.25, 1});
  CHECK(box_contains(b, std::vector<double>{0.1, 0.9}));
  CHECK(!box_contains(b, std::vector<double>{0.25, 0.9}));  // on the open bound
  const AxisBox c({0, 0}, {1, 1.0 / 3.0});
  CHECK(!box_contains(c, std::vector<double>{0.5, 1.0 / 3.0}));
  CHECK_THROWS_AS(box_contains(b, std::vector<double>{0.5}), usage_error);
}

TEST_CASE("boundary points never count as contained") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + static_cast<int>(rng.next_below(3));
    std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      double a = rng.next_unit(), b = rng.next_unit();
      if (a > b) std::swap(a, b);
      if (a == b) b = a + 0.25 < 1 ? a + 0.25 : 0.99;
      lo[static_cast<std::size_t>(i)] = a;
      hi[static_cast<std::size_t>(i)] = b;
    }
    const AxisBox b(lo, hi);
    std::vector<double> x(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
      x[static_cast<std::size_t>(i)] = 0.5 * (lo[static_cast<std::size_t>(i)] +
                                              hi[static_cast<std::size_t>(i)]);
    const int pin = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(d)));
    x[static_cast<std::size_t>(pin)] = rng.next_unit() < 0.5 ? lo[static_cast<std::size_t>(pin)]
                                                             : hi[static_cast<std::size_t>(pin)];
    CHECK(!box_contains(b, x));
  }
}

TEST_CASE("box_is_empty with witness") {
  PointSet empty(2);
  CHECK(box_is_empty(AxisBox({0, 0}, {1, 1}), empty));

  // Both points sit on open boundaries of the box.
  const PointSet xs = PointSet::from_points(
      2, {{1.0 / 3.0, 1.0 / 3.0}, {2.0 / 3.0, 2.0 / 3.0}});
  CHECK(box_is_empty(AxisBox({1.0 / 3.0, 0}, {1, 2.0 / 3.0}), xs));

  const PointSet one = PointSet::from_points(2, {{0.5, 0.5}});
  const auto w = blocking_point(AxisBox({0, 0}, {1, 1}), one);
  REQUIRE(w.has_value());
  CHECK(*w == 0);
}

TEST_CASE("volume is multiplicative under products") {
  Rng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    auto draw = [&](int d) {
      std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) {
        double a = rng.next_unit() * 0.5, b = 0.5 + rng.next_unit() * 0.5;
        lo[static_cast<std::size_t>(i)] = a;
        hi[static_cast<std::size_t>(i)] = b;
      }
      return AxisBox(lo, hi);
    };
    const AxisBox b1 = draw(2), b2 = draw(1);
    std::vector<double> lo = b1.lo(), hi = b1.hi();
    lo.insert(lo.end(), b2.lo().begin(), b2.lo().end());
    hi.insert(hi.end(), b2.hi().begin(), b2.hi().end());
    const AxisBox prod(lo, hi);
    CHECK(box_volume(prod) == doctest::Approx(box_volume(b1) * box_volume(b2)).epsilon(1e-15));
    CHECK(box_volume_exact(prod) == box_volume_exact(b1) * box_volume_exact(b2));
  }
}

TEST_CASE("exact dyadic volume matches float within 1e-15 relative") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + static_cast<int>(rng.next_below(4));
    std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      auto a = static_cast<double>(rng.next_below(8)) / 16.0;
      auto b = 0.5 + static_cast<double>(rng.next_below(8)) / 16.0;
      lo[static_cast<std::size_t>(i)] = a;
      hi[static_cast<std::size_t>(i)] = b;
    }
    const AxisBox b(lo, hi);
    const double exact = box_volume_exact(b).to_double();
    CHECK(box_volume(b) == doctest::Approx(exact).epsilon(1e-15));
  }
}

TEST_CASE("containment and volume invariant under coordinate permutation") {
  const AxisBox b({0.1, 0.3, 0.0}, {0.6, 0.9, 0.5});
  const AxisBox p({0.3, 0.0, 0.1}, {0.9, 0.5, 0.6});  // axes rotated by one
  CHECK(box_volume(b) == box_volume(p));
  const std::vector<double> x{0.2, 0.5, 0.4};
  const std::vector<double> xp{0.5, 0.4, 0.2};
  CHECK(box_contains(b, x) == box_contains(p, xp));
}

TEST_CASE("degenerate and invalid boxes are rejected at construction") {
  CHECK_THROWS_AS(AxisBox({0.5}, {0.5}), usage_error);
  CHECK_THROWS_AS(AxisBox({0.7}, {0.3}), usage_error);
  CHECK_THROWS_AS(AxisBox({-0.1}, {0.5}), usage_error);
  CHECK_THROWS_AS(AxisBox({0.0}, {1.5}), usage_error);
  CHECK_THROWS_AS(AxisBox({}, {}), usage_error);
  CHECK_THROWS_AS(AxisBox({0.0, 0.0}, {1.0}), usage_error);
}

TEST_CASE("PointSet validates coordinates and dimension") {
  PointSet xs(2);
  CHECK_THROWS_AS(xs.add(std::vector<double>{0.5}), usage_error);
  CHECK_THROWS_AS(xs.add(std::vector<double>{0.5, 1.5}), usage_error);
  CHECK_THROWS_AS(PointSet(0), usage_error);
  xs.add(std::vector<double>{0.0, 1.0});  // closed cube boundary is fine
  CHECK(xs.size() == 1);
}

TEST_CASE("CSV round trip with provenance and header") {
  PointSet xs(3, "unit-test(seed=9)");
  xs.add(std::vector<double>{0.125, 0.5, 1.0 / 3.0});
  xs.add(std::vector<double>{0.0, 1.0, 0.25});
  std::ostringstream out1, out2;
  xs.write_csv(out1);
  xs.write_csv(out2);
  CHECK(out1.str() == out2.str());  // byte-for-byte deterministic

  std::istringstream in(out1.str());
  const PointSet back = PointSet::read_csv(in);
  REQUIRE(back.size() == 2);
  CHECK(back.dim() == 3);
  CHECK(back.provenance() == "unit-test(seed=9)");
  for (std::size_t i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) CHECK(back.coord(i, j) == xs.coord(i, j));
}

TEST_CASE("CSV rejects bad rows with the row number") {
  std::istringstream bad("x1,x2\n0.5,0.5\n0.5,1.5\n");
  CHECK_THROWS_WITH_AS(PointSet::read_csv(bad, "pts.csv"),
                       doctest::Contains("row 3"), usage_error);
  std::istringstream garbled("0.5,abc\n");
  CHECK_THROWS_AS(PointSet::read_csv(garbled), usage_error);
  std::istringstream ragged("0.5,0.5\n0.5\n");
  CHECK_THROWS_WITH_AS(PointSet::read_csv(ragged, "pts.csv"),
                       doctest::Contains("row 2"), usage_error);
  std::istringstream empty("# provenance: nothing\n");
  CHECK_THROWS_AS(PointSet::read_csv(empty), usage_error);
}
