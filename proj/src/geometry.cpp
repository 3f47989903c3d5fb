#include "dispbox/geometry.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dispbox/errors.hpp"

namespace dispbox {

PointSet::PointSet(int dim, std::string provenance)
    : dim_(dim), provenance_(std::move(provenance)) {
  if (dim < 1) throw usage_error("PointSet dimension must be >= 1");
}

PointSet PointSet::from_points(int dim, const std::vector<Point>& pts,
                               std::string provenance) {
  PointSet xs(dim, std::move(provenance));
  for (const auto& p : pts) xs.add(p);
  return xs;
}

void PointSet::add(std::span<const double> p) {
  if (static_cast<int>(p.size()) != dim_)
    throw usage_error("point has dimension " + std::to_string(p.size()) +
                      ", point set has dimension " + std::to_string(dim_));
  for (double c : p) {
    if (!(c >= 0.0 && c <= 1.0))
      throw usage_error("coordinate " + std::to_string(c) + " outside [0,1]");
  }
  data_.insert(data_.end(), p.begin(), p.end());
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  cells.push_back(cur);
  return cells;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool looks_like_header(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (trim(cells[i]) != "x" + std::to_string(i + 1)) return false;
  }
  return true;
}

}  // namespace

PointSet PointSet::read_csv(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t row = 0;
  int dim = -1;
  std::vector<Point> pts;
  std::string provenance;
  bool header_allowed = true;

  while (std::getline(in, line)) {
    ++row;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const std::string tag = "# provenance:";
      if (t.rfind(tag, 0) == 0) provenance = trim(t.substr(tag.size()));
      continue;
    }
    auto cells = split_csv_row(t);
    if (header_allowed && looks_like_header(cells)) {
      dim = static_cast<int>(cells.size());
      header_allowed = false;
      continue;
    }
    header_allowed = false;

    Point p;
    p.reserve(cells.size());
    for (const auto& cell : cells) {
      const std::string v = trim(cell);
      double x;
      auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
      if (ec != std::errc() || ptr != v.data() + v.size())
        throw usage_error(source_name + ": row " + std::to_string(row) +
                          ": cannot parse value '" + v + "'");
      if (!(x >= 0.0 && x <= 1.0))
        throw usage_error(source_name + ": row " + std::to_string(row) + ": value " + v +
                          " outside [0,1]");
      p.push_back(x);
    }
    if (dim == -1) dim = static_cast<int>(p.size());
    if (static_cast<int>(p.size()) != dim)
      throw usage_error(source_name + ": row " + std::to_string(row) + ": expected " +
                        std::to_string(dim) + " columns, got " + std::to_string(p.size()));
    pts.push_back(std::move(p));
  }
  if (dim == -1) throw usage_error(source_name + ": no data rows");
  return from_points(dim, pts, provenance);
}

PointSet PointSet::read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open points file: " + path);
  return read_csv(in, path);
}

void PointSet::write_csv(std::ostream& out) const {
  if (!provenance_.empty()) out << "# provenance: " << provenance_ << "\n";
  for (int j = 0; j < dim_; ++j) out << (j ? "," : "") << "x" << (j + 1);
  out << "\n";
  char buf[32];
  for (std::size_t i = 0; i < size(); ++i) {
    auto p = point(i);
    for (int j = 0; j < dim_; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", p[static_cast<std::size_t>(j)]);
      out << (j ? "," : "") << buf;
    }
    out << "\n";
  }
}

void PointSet::write_csv_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw usage_error("cannot open output file: " + path);
  write_csv(out);
}

AxisBox::AxisBox(std::vector<double> lo, std::vector<double> hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.empty() || lo_.size() != hi_.size())
    throw usage_error("AxisBox bounds must be nonempty and of equal dimension");
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (!(lo_[i] >= 0.0 && lo_[i] < hi_[i] && hi_[i] <= 1.0))
      throw usage_error("AxisBox axis " + std::to_string(i) + ": need 0 <= lo < hi <= 1, got (" +
                        std::to_string(lo_[i]) + ", " + std::to_string(hi_[i]) + ")");
  }
}

double box_volume(const AxisBox& b) {
  double v = 1.0;
  for (int i = 0; i < b.dim(); ++i)
    v *= b.hi()[static_cast<std::size_t>(i)] - b.lo()[static_cast<std::size_t>(i)];
  return v;
}

Dyadic box_volume_exact(const AxisBox& b) {
  Dyadic v = Dyadic::one();
  for (int i = 0; i < b.dim(); ++i) {
    Dyadic side = Dyadic::from_double(b.hi()[static_cast<std::size_t>(i)]) -
                  Dyadic::from_double(b.lo()[static_cast<std::size_t>(i)]);
    v = v * side;
  }
  return v;
}

bool box_contains(const AxisBox& b, std::span<const double> x) {
  if (static_cast<int>(x.size()) != b.dim())
    throw usage_error("box_contains: dimension mismatch (box " + std::to_string(b.dim()) +
                      ", point " + std::to_string(x.size()) + ")");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(b.lo()[i] < x[i] && x[i] < b.hi()[i])) return false;
  }
  return true;
}

std::optional<std::size_t> blocking_point(const AxisBox& b, const PointSet& xs) {
  if (b.dim() != xs.dim())
    throw usage_error("blocking_point: dimension mismatch (box " + std::to_string(b.dim()) +
                      ", points " + std::to_string(xs.dim()) + ")");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (box_contains(b, xs.point(i))) return i;
  }
  return std::nullopt;
}

}  // namespace dispbox
