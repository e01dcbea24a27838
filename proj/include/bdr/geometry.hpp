#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace bdr {

// Plane coordinates in units of the maximum communication distance.
using Point = Eigen::Vector2d;
using Polygon = std::vector<Point>;

inline constexpr double kGeomEps = 1e-9;

template <typename Derived1, typename Derived2>
inline typename Derived1::Scalar cross2(const Eigen::MatrixBase<Derived1>& a,
                                        const Eigen::MatrixBase<Derived2>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Signed area, positive for counterclockwise vertex order.
template <typename Scalar>
Scalar signed_area(std::span<const Eigen::Matrix<Scalar, 2, 1>> ring) {
  Scalar twice = 0;
  const auto n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = ring[i];
    const auto& b = ring[(i + 1) % n];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return twice / 2;
}

// Even-odd rule; points on the border count as outside.
inline bool strictly_inside(const Point& p, std::span<const Point> poly) {
  bool inside = false;
  const auto n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = poly[i];
    const Point& b = poly[j];
    // on-edge check
    const Point ab = b - a;
    const double len = ab.norm();
    if (len > 0) {
      const double dist = std::abs(cross2(ab, p - a)) / len;
      const double t = ab.dot(p - a) / (len * len);
      if (dist < kGeomEps && t >= -kGeomEps && t <= 1 + kGeomEps) return false;
    }
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

// Polar angle in degrees, normalized to [0, 360).
inline double polar_degrees(const Point& v) {
  double deg = std::atan2(v.y(), v.x()) * 180.0 / std::numbers::pi;
  if (deg < 0) deg += 360.0;
  if (deg >= 360.0) deg -= 360.0;
  return deg;
}

}  // namespace bdr
