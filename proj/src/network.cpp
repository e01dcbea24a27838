#include "bdr/network.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bdr/error.hpp"
#include "spatial_grid.hpp"

namespace bdr {

namespace {

bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double o1 = cross2(b - a, c - a);
  const double o2 = cross2(b - a, d - a);
  const double o3 = cross2(d - c, a - c);
  const double o4 = cross2(d - c, b - c);
  return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 &&
         o4 != 0;
}

bool polygon_is_simple(const Polygon& poly) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) return false;
    }
  return std::abs(signed_area<double>(poly)) > 0;
}

bool inside_any(const Point& p, const std::vector<Polygon>& holes) {
  return std::any_of(holes.begin(), holes.end(),
                     [&](const Polygon& h) { return strictly_inside(p, h); });
}

Polygon scaled(std::initializer_list<std::array<double, 2>> unit, double w, double h) {
  Polygon out;
  for (const auto& [x, y] : unit) out.emplace_back(x * w, y * h);
  return out;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void validate(const NetworkConfig& config) {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (!(config.area_width > 0) || !std::isfinite(config.area_width)) fail("area_width must be > 0");
  if (!(config.area_height > 0) || !std::isfinite(config.area_height)) fail("area_height must be > 0");
  if (const auto* grid = std::get_if<PerturbedGrid>(&config.placement)) {
    if (!(grid->spacing > 0) || !std::isfinite(grid->spacing)) fail("placement.spacing must be > 0");
  } else if (!(config.target_avg_degree > 0)) {
    fail("target_avg_degree must be > 0 for random placement");
  }
  if (const auto* q = std::get_if<QuasiUnitDisk>(&config.comm_model)) {
    if (!(q->d >= 0 && q->d <= 1)) fail("comm_model.d must lie in [0,1]");
  }
  for (std::size_t i = 0; i < config.hole_mask.size(); ++i) {
    const Polygon& poly = config.hole_mask[i];
    std::ostringstream where;
    where << "holes[" << i << "]";
    if (poly.size() < 3) fail(where.str() + " needs at least 3 vertices");
    for (const Point& p : poly)
      if (!p.allFinite() || p.x() < 0 || p.y() < 0 || p.x() > config.area_width ||
          p.y() > config.area_height)
        fail(where.str() + " leaves the deployment area");
    if (!polygon_is_simple(poly)) fail(where.str() + " is not a simple polygon");
  }
}

double spacing_for_degree(double degree, const CommModel& model) {
  double coverage = 1.0;
  if (const auto* q = std::get_if<QuasiUnitDisk>(&model)) coverage = q->d * q->d + 0.5 * (1.0 - q->d * q->d);
  return std::sqrt(std::numbers::pi * coverage / (degree + 1.0));
}

std::vector<std::string_view> hole_preset_names() {
  return {"none", "cross", "rectangles", "diamond", "lshape", "notch"};
}

std::vector<Polygon> hole_preset(std::string_view name, double w, double h) {
  if (name == "none") return {};
  if (name == "cross")
    return {scaled({{0.4, 0.2}, {0.6, 0.2}, {0.6, 0.4}, {0.8, 0.4}, {0.8, 0.6}, {0.6, 0.6},
                    {0.6, 0.8}, {0.4, 0.8}, {0.4, 0.6}, {0.2, 0.6}, {0.2, 0.4}, {0.4, 0.4}},
                   w, h)};
  if (name == "rectangles")
    return {scaled({{0.15, 0.2}, {0.45, 0.2}, {0.45, 0.4}, {0.15, 0.4}}, w, h),
            scaled({{0.55, 0.55}, {0.75, 0.55}, {0.75, 0.85}, {0.55, 0.85}}, w, h)};
  if (name == "diamond")
    return {scaled({{0.5, 0.2}, {0.8, 0.5}, {0.5, 0.8}, {0.2, 0.5}}, w, h)};
  if (name == "lshape")
    return {scaled({{0.25, 0.25}, {0.75, 0.25}, {0.75, 0.45}, {0.45, 0.45}, {0.45, 0.75},
                    {0.25, 0.75}},
                   w, h)};
  if (name == "notch")
    return {scaled({{0.35, 0.0}, {0.65, 0.0}, {0.65, 0.45}, {0.35, 0.45}}, w, h),
            scaled({{0.4, 0.7}, {0.6, 0.7}, {0.6, 0.85}, {0.4, 0.85}}, w, h)};
  throw ConfigError("unknown hole preset '" + std::string(name) + "'");
}

bool linked(const CommModel& model, std::uint64_t seed, NodeId a, NodeId b, const Point& p,
            const Point& q) {
  if (const auto* qudg = std::get_if<QuasiUnitDisk>(&model)) {
    const double dist2 = (p - q).squaredNorm();
    if (dist2 > 1.0) return false;
    if (dist2 <= qudg->d * qudg->d) return true;
    return PairCoin{seed}(a, b);
  }
  return link_udg(p, q);
}

std::vector<Point> sample_positions(const NetworkConfig& config, RandomStream& rng) {
  validate(config);
  std::vector<Point> points;

  if (const auto* grid = std::get_if<PerturbedGrid>(&config.placement)) {
    const double s = grid->spacing;
    const long cols = static_cast<long>(std::floor(config.area_width / s + 1e-9));
    const long rows = static_cast<long>(std::floor(config.area_height / s + 1e-9));
    points.reserve(static_cast<std::size_t>(cols * rows));
    for (long j = 0; j < rows; ++j)
      for (long i = 0; i < cols; ++i) {
        const double x = static_cast<double>(i) * s + rng.uniform() * s;
        const double y = static_cast<double>(j) * s + rng.uniform() * s;
        const Point p(x, y);
        if (!inside_any(p, config.hole_mask)) points.push_back(p);
      }
    return points;
  }

  // Random placement, grown until the measured degree reaches the target.
  const double target = config.target_avg_degree;
  const double area = config.area_width * config.area_height;
  const auto cap = static_cast<std::size_t>(10.0 * area * (target + 1.0) / std::numbers::pi) + 100;
  detail::SpatialGrid index(0, 0, config.area_width, config.area_height, 1.0);
  std::size_t edges = 0;
  while (true) {
    for (int batch = 0; batch < 100; ++batch) {
      Point p;
      do {
        p = Point(rng.uniform() * config.area_width, rng.uniform() * config.area_height);
      } while (inside_any(p, config.hole_mask));
      const auto id = static_cast<NodeId>(points.size());
      index.for_near(p, [&](std::uint32_t other) {
        if (linked(config.comm_model, config.seed, other, id, points[other], p)) ++edges;
      });
      index.insert(id, p);
      points.push_back(p);
    }
    const double measured = 2.0 * static_cast<double>(edges) / static_cast<double>(points.size());
    if (measured >= target) return points;
    if (points.size() >= cap) {
      std::ostringstream msg;
      msg << "average degree " << target << " not reached with " << points.size()
          << " nodes (measured " << measured << ")";
      throw GenerationError(msg.str());
    }
  }
}

ConnectivityGraph build_graph(std::vector<Point> positions, const NetworkConfig& config) {
  std::vector<Edge> edges;
  if (!positions.empty()) {
    auto index = detail::make_grid(positions, 1.0);
    for (NodeId i = 0; i < positions.size(); ++i) index.insert(i, positions[i]);
    for (NodeId a = 0; a < positions.size(); ++a) {
      const Point& p = positions[a];
      index.for_near(p, [&](std::uint32_t b) {
        if (b <= a) return;
        const Point& q = positions[b];
        if (linked(config.comm_model, config.seed, a, b, p, q))
          edges.push_back({a, b, signal_class(p, q)});
      });
    }
  }
  const std::size_t n = positions.size();
  return ConnectivityGraph::from_edges(n, edges, std::move(positions), true);
}

ConnectivityGraph generate_network(const NetworkConfig& config) {
  RandomStream rng(config.seed);
  return build_graph(sample_positions(config, rng), config);
}

}  // namespace bdr
