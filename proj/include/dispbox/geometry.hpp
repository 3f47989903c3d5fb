#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dispbox/dyadic.hpp"

namespace dispbox {

using Point = std::vector<double>;

/// Finite point set in [0,1]^d. Immutable once built (construction validates
/// every coordinate); safe to share across threads.
class PointSet {
 public:
  explicit PointSet(int dim, std::string provenance = {});

  static PointSet from_points(int dim, const std::vector<Point>& pts,
                              std::string provenance = {});

  int dim() const { return dim_; }
  std::size_t size() const { return data_.size() / static_cast<std::size_t>(dim_); }
  bool empty() const { return data_.empty(); }

  std::span<const double> point(std::size_t i) const {
    return {data_.data() + i * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }
  double coord(std::size_t i, int axis) const {
    return data_[i * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(axis)];
  }

  void add(std::span<const double> p);

  const std::string& provenance() const { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

  // CSV: one point per row, exactly d numeric columns, '.' decimal separator.
  // Lines starting with '#' are comments; an optional first row "x1,...,xd" is
  // accepted as a header. Out-of-range values are rejected with the row number.
  static PointSet read_csv(std::istream& in, const std::string& source_name = "<stream>");
  static PointSet read_csv_file(const std::string& path);
  void write_csv(std::ostream& out) const;
  void write_csv_file(const std::string& path) const;

 private:
  int dim_;
  std::vector<double> data_;
  std::string provenance_;
};

/// Open axis-parallel box, the product of open intervals (lo[i], hi[i]) with
/// 0 <= lo[i] < hi[i] <= 1. Degenerate intervals are construction errors.
class AxisBox {
 public:
  AxisBox(std::vector<double> lo, std::vector<double> hi);

  int dim() const { return static_cast<int>(lo_.size()); }
  const std::vector<double>& lo() const { return lo_; }
  const std::vector<double>& hi() const { return hi_; }

  bool operator==(const AxisBox& o) const { return lo_ == o.lo_ && hi_ == o.hi_; }

 private:
  std::vector<double> lo_, hi_;
};

double box_volume(const AxisBox& b);
// Exact volume: every binary64 bound is a dyadic rational, so the product of
// the side lengths is computed without rounding.
Dyadic box_volume_exact(const AxisBox& b);

// Open-interval containment: true iff lo[i] < x[i] < hi[i] for every i.
// Points on any bound are outside. This is the one place the open semantics
// are enforced.
bool box_contains(const AxisBox& b, std::span<const double> x);

// Index of some point of xs inside b, or nullopt if b is empty of xs.
std::optional<std::size_t> blocking_point(const AxisBox& b, const PointSet& xs);

inline bool box_is_empty(const AxisBox& b, const PointSet& xs) {
  return !blocking_point(b, xs).has_value();
}

}  // namespace dispbox
