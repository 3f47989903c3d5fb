#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dispbox/geometry.hpp"

namespace dispbox {

struct SearchConfig {
  int max_exact_dim = 4;       // exact search is O(m^{2d} n); cap is configurable
  int estimator_budget = 64;   // random seeds grown by the estimator, >= 1
  std::uint64_t rng_seed = 0;
  int workers = 0;             // 0 = hardware concurrency; result is worker-count independent
};

struct DispersionResult {
  enum class Mode { exact, lower_estimate };

  double value;
  AxisBox witness;
  Mode mode;
  std::uint64_t boxes_examined;
  double seconds;
};

const char* to_string(DispersionResult::Mode m);

// Sorted, deduplicated {0,1} union the axis coordinates of xs. A maximal empty
// open box has every bound supported by a point coordinate or the cube wall,
// so these grids make the finite search exact.
std::vector<double> candidate_coordinates(const PointSet& xs, int axis);

// Largest empty open box over the candidate grid, i.e. disp(xs) exactly.
// Ties broken by the lexicographically smallest concatenated (lo, hi) vector,
// so serial and parallel runs return identical witnesses.
DispersionResult exact_dispersion(const PointSet& xs, const SearchConfig& cfg = {});

// Certified lower estimate: grows cfg.estimator_budget random seeds to maximal
// empty boxes and also evaluates any caller-supplied probe boxes (e.g. the
// structured test-box family); every returned witness is a genuine empty box,
// so value <= disp(xs) always. Deterministic given cfg.rng_seed.
DispersionResult estimate_dispersion(const PointSet& xs, const SearchConfig& cfg = {},
                                     std::span<const AxisBox> probe_boxes = {});

}  // namespace dispbox
