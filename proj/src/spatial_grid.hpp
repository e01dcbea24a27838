#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "bdr/geometry.hpp"

namespace bdr::detail {

// Uniform bucket grid over points; cell size equals the query radius.
class SpatialGrid {
 public:
  SpatialGrid(double min_x, double min_y, double max_x, double max_y, double cell)
      : min_x_(min_x), min_y_(min_y), cell_(cell) {
    cols_ = std::max<long>(1, static_cast<long>(std::floor((max_x - min_x) / cell)) + 1);
    rows_ = std::max<long>(1, static_cast<long>(std::floor((max_y - min_y) / cell)) + 1);
    buckets_.resize(static_cast<std::size_t>(cols_ * rows_));
  }

  void insert(std::uint32_t id, const Point& p) { buckets_[index(col(p.x()), row(p.y()))].push_back(id); }

  // Calls fn(id) for every inserted id in the 3x3 cell block around p.
  template <typename Fn>
  void for_near(const Point& p, Fn&& fn) const {
    const long c = col(p.x());
    const long r = row(p.y());
    for (long rr = std::max(0L, r - 1); rr <= std::min(rows_ - 1, r + 1); ++rr)
      for (long cc = std::max(0L, c - 1); cc <= std::min(cols_ - 1, c + 1); ++cc)
        for (std::uint32_t id : buckets_[index(cc, rr)]) fn(id);
  }

 private:
  long col(double x) const {
    return std::clamp(static_cast<long>(std::floor((x - min_x_) / cell_)), 0L, cols_ - 1);
  }
  long row(double y) const {
    return std::clamp(static_cast<long>(std::floor((y - min_y_) / cell_)), 0L, rows_ - 1);
  }
  std::size_t index(long c, long r) const { return static_cast<std::size_t>(r * cols_ + c); }

  double min_x_, min_y_, cell_;
  long cols_ = 1, rows_ = 1;
  std::vector<std::vector<std::uint32_t>> buckets_;
};

template <typename Range>
SpatialGrid make_grid(const Range& points, double cell) {
  double lo_x = 0, lo_y = 0, hi_x = 0, hi_y = 0;
  bool first = true;
  for (const Point& p : points) {
    if (first) {
      lo_x = hi_x = p.x();
      lo_y = hi_y = p.y();
      first = false;
    }
    lo_x = std::min(lo_x, p.x());
    lo_y = std::min(lo_y, p.y());
    hi_x = std::max(hi_x, p.x());
    hi_y = std::max(hi_y, p.y());
  }
  return SpatialGrid(lo_x, lo_y, hi_x, hi_y, cell);
}

}  // namespace bdr::detail
