#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bdr/geometry.hpp"
#include "bdr/graph.hpp"

namespace bdr {

struct PerturbedGrid {
  double spacing = 0.5;
};
struct RandomPlacement {};
using Placement = std::variant<PerturbedGrid, RandomPlacement>;

struct UnitDisk {};
struct QuasiUnitDisk {
  double d = 0.75;  // reliable radius
};
using CommModel = std::variant<UnitDisk, QuasiUnitDisk>;

struct NetworkConfig {
  double area_width = 30.0;
  double area_height = 30.0;
  Placement placement = PerturbedGrid{};
  CommModel comm_model = UnitDisk{};
  double target_avg_degree = 12.0;
  std::vector<Polygon> hole_mask;
  std::uint64_t seed = 1;
};

// Throws ConfigError describing the first violated constraint.
void validate(const NetworkConfig& config);

// Perturbed-grid spacing whose expected degree equals `degree`: pi/s^2 - 1
// under UDG, with the disk area scaled by the expected linked fraction for
// d-QUDG (d^2 + (1 - d^2)/2).
double spacing_for_degree(double degree, const CommModel& model = UnitDisk{});

std::vector<std::string_view> hole_preset_names();
// Polygons of a named preset scaled to the given area; throws ConfigError
// for unknown names.
std::vector<Polygon> hole_preset(std::string_view name, double width, double height);

// Deterministic pseudo-random stream. Uniform doubles are built from the top
// 53 bits so the sequence does not depend on the standard library's
// distribution implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t mix64(std::uint64_t x);

// Fair coin for an unordered node pair, fixed by the network seed.
struct PairCoin {
  std::uint64_t seed = 0;
  bool operator()(NodeId a, NodeId b) const {
    const std::uint64_t lo = a < b ? a : b;
    const std::uint64_t hi = a < b ? b : a;
    return (mix64(seed ^ mix64((lo << 32) | hi)) >> 63) != 0;
  }
};

inline bool link_udg(const Point& p, const Point& q) { return (p - q).squaredNorm() <= 1.0; }

inline bool link_qudg(const Point& p, const Point& q, double d, bool coin) {
  const double dist2 = (p - q).squaredNorm();
  if (dist2 <= d * d) return true;
  if (dist2 > 1.0) return false;
  return coin;
}

inline Signal signal_class(const Point& p, const Point& q) {
  return (p - q).squaredNorm() < 0.25 ? Signal::Strong : Signal::Weak;
}

// Whether nodes a and b (with positions p, q) are linked under `model`.
bool linked(const CommModel& model, std::uint64_t seed, NodeId a, NodeId b, const Point& p,
            const Point& q);

// Node positions for `config`; random placement keeps adding nodes until the
// measured average degree first reaches the target (checked every 100
// insertions). Throws GenerationError when the node cap is exceeded.
std::vector<Point> sample_positions(const NetworkConfig& config, RandomStream& rng);

ConnectivityGraph build_graph(std::vector<Point> positions, const NetworkConfig& config);

// sample_positions + build_graph with a stream seeded from config.seed.
ConnectivityGraph generate_network(const NetworkConfig& config);

}  // namespace bdr
