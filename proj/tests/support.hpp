#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "bdr/graph.hpp"
#include "bdr/network.hpp"

namespace bdr::testing {

inline ConnectivityGraph graph_of(std::size_t n, std::initializer_list<std::pair<NodeId, NodeId>> edges,
                                  std::vector<Point> positions = {}) {
  std::vector<Edge> list;
  for (auto [u, v] : edges) list.push_back({u, v, Signal::Weak});
  return ConnectivityGraph::from_edges(n, list, std::move(positions), false);
}

// UDG over explicit positions, computed pairwise (no spatial index).
inline ConnectivityGraph udg_of(std::vector<Point> pts) {
  std::vector<Edge> list;
  for (NodeId i = 0; i < pts.size(); ++i)
    for (NodeId j = i + 1; j < pts.size(); ++j)
      if ((pts[i] - pts[j]).squaredNorm() <= 1.0) list.push_back({i, j, signal_class(pts[i], pts[j])});
  const auto n = pts.size();
  return ConnectivityGraph::from_edges(n, list, std::move(pts), true);
}

inline ConnectivityGraph cycle_graph(std::size_t n) {
  std::vector<Edge> list;
  for (NodeId i = 0; i < n; ++i) list.push_back({i, static_cast<NodeId>((i + 1) % n), Signal::Weak});
  return ConnectivityGraph::from_edges(n, list, {}, false);
}

inline ConnectivityGraph path_graph(std::size_t n) {
  std::vector<Edge> list;
  for (NodeId i = 0; i + 1 < n; ++i) list.push_back({i, i + 1, Signal::Weak});
  return ConnectivityGraph::from_edges(n, list, {}, false);
}

// Erdos-Renyi style random graph with edge probability p.
inline ConnectivityGraph random_graph(std::size_t n, double p, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<Edge> list;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (rng.uniform() < p) list.push_back({i, j, Signal::Weak});
  return ConnectivityGraph::from_edges(n, list, {}, false);
}

// Floyd-Warshall hop distances; unreachable pairs stay at `inf`.
inline constexpr int kInf = std::numeric_limits<int>::max() / 4;

inline std::vector<std::vector<int>> all_pairs_hops(const ConnectivityGraph& g) {
  const auto n = g.size();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (NodeId i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (NodeId j : g.neighbors(i)) d[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// Longest simple cycle whose along-cycle distances all equal graph
// distances, by exhaustive enumeration. 0 when the graph is acyclic.
inline int brute_max_tight_cycle(const ConnectivityGraph& g) {
  const auto d = all_pairs_hops(g);
  const auto n = g.size();
  int best = 0;
  std::vector<NodeId> path;
  std::vector<char> on(n, 0);
  auto tight = [&] {
    const auto len = path.size();
    for (std::size_t i = 0; i < len; ++i)
      for (std::size_t j = i + 1; j < len; ++j) {
        const auto along = static_cast<int>(std::min(j - i, len - (j - i)));
        if (d[path[i]][path[j]] != along) return false;
      }
    return true;
  };
  std::function<void(NodeId)> extend = [&](NodeId v) {
    for (NodeId w : g.neighbors(v)) {
      if (w == path.front() && path.size() >= 3 && path[1] < path.back()) {
        if (static_cast<int>(path.size()) > best && tight()) best = static_cast<int>(path.size());
        continue;
      }
      if (w <= path.front() || on[w]) continue;
      // a tight cycle of length L has no pair further apart than L/2
      if (d[path.front()][w] > static_cast<int>(n) / 2) continue;
      on[w] = 1;
      path.push_back(w);
      extend(w);
      path.pop_back();
      on[w] = 0;
    }
  };
  for (NodeId s = 0; s < n; ++s) {
    path = {s};
    on[s] = 1;
    extend(s);
    on[s] = 0;
  }
  return best;
}

// Residual of the best orthogonal (rotation or reflection) alignment of the
// centered point sets, via the SVD of their cross-covariance.
inline double procrustes_residual(const Eigen::MatrixX2d& got, const Eigen::MatrixX2d& want) {
  const Eigen::MatrixX2d a = got.rowwise() - got.colwise().mean();
  const Eigen::MatrixX2d b = want.rowwise() - want.colwise().mean();
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(a.transpose() * b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix2d q = svd.matrixU() * svd.matrixV().transpose();
  return (a * q - b).rowwise().norm().maxCoeff();
}

inline Eigen::MatrixXd euclidean_distances(const Eigen::MatrixX2d& pts) {
  const auto n = pts.rows();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) d(i, j) = (pts.row(i) - pts.row(j)).norm();
  return d;
}

inline Point polar(double r, double degrees) {
  const double a = degrees * std::numbers::pi / 180.0;
  return {r * std::cos(a), r * std::sin(a)};
}

// Four nodes u, v, x, w framing a gap at u of about 102 degrees that is
// closed off by x, plus four further neighbors of u spread over the lower
// half. Node 0 is u, 1 is v, 2 is w, 3 is x.
inline std::vector<Point> micro_hole_positions() {
  return {Point(0, 0),         Point(0.95, -0.1), Point(-0.1, 0.95), Point(0.85, 0.85),
          polar(0.8, 150.0),   polar(0.8, 210.0), polar(0.8, 270.0), polar(0.8, 330.0)};
}

// Ragged top border: valleys at (1.1k, 0) and tips at (1.1k + 0.55, 0.7),
// with three full interior rows below. Tips are not linked to each other, so
// the outer face runs valley, tip, valley, ... and the widest gap at a
// valley is only about 80 degrees. The rows are jittered slightly so no
// three nodes are collinear, which the ground-truth drawing rejects.
struct Sawtooth {
  std::vector<Point> positions;
  std::vector<NodeId> tips;
  std::vector<NodeId> valleys;  // excluding the two ends
};

inline Sawtooth sawtooth(int teeth) {
  Sawtooth s;
  for (int k = 0; k <= teeth; ++k) {
    if (k > 0 && k < teeth) s.valleys.push_back(static_cast<NodeId>(s.positions.size()));
    s.positions.emplace_back(1.1 * k, 0.0);
    if (k < teeth) {
      s.tips.push_back(static_cast<NodeId>(s.positions.size()));
      s.positions.emplace_back(1.1 * k + 0.55, 0.7);
    }
  }
  for (double y : {-0.35, -0.8, -1.25})
    for (int m = 0; m <= 2 * teeth; ++m) {
      const double i = static_cast<double>(s.positions.size());
      s.positions.emplace_back(0.55 * m + 0.02 * std::sin(7.1 * i), y + 0.02 * std::cos(5.3 * i));
    }
  return s;
}

}  // namespace bdr::testing
