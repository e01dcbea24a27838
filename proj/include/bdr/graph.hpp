#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bdr/geometry.hpp"

namespace bdr {

using NodeId = std::uint32_t;

enum class Signal : std::uint8_t { Strong, Weak };

struct Edge {
  NodeId u;
  NodeId v;
  Signal signal = Signal::Weak;
};

// Undirected sensor connectivity graph in compressed adjacency form.
// Neighbor lists are sorted; positions and per-edge signal classes are
// optional attributes carried along for ground truth and the signal-aware
// embedding.
class ConnectivityGraph {
 public:
  ConnectivityGraph() = default;

  // Throws std::invalid_argument on self-loops, duplicates or bad ids.
  static ConnectivityGraph from_edges(std::size_t n, std::span<const Edge> edges,
                                      std::vector<Point> positions = {},
                                      bool with_signal = true);

  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return adjacency_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  bool adjacent(NodeId u, NodeId v) const;

  bool has_positions() const { return !positions_.empty(); }
  const std::vector<Point>& positions() const { return positions_; }
  const Point& position(NodeId u) const { return positions_[u]; }

  bool has_signal() const { return has_signal_; }
  // Signal of edge (u,v); nullopt when the edge is absent or no signal data.
  std::optional<Signal> signal(NodeId u, NodeId v) const;
  // Signal of the i-th entry of neighbors(u).
  Signal signal_at(NodeId u, std::size_t i) const { return signals_[offsets_[u] + i]; }

  // Each undirected edge once, u < v, sorted.
  std::vector<Edge> edges() const;

  double average_degree() const {
    return size() == 0 ? 0.0 : 2.0 * static_cast<double>(edge_count()) / static_cast<double>(size());
  }
  std::size_t max_degree() const;

  friend bool operator==(const ConnectivityGraph&, const ConnectivityGraph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<Signal> signals_;
  std::vector<Point> positions_;
  bool has_signal_ = false;
};

// Induced subgraph with local ids 0..k-1 assigned in ascending global-id
// order, so local id order agrees with global id order.
struct Subgraph {
  ConnectivityGraph graph;
  std::vector<NodeId> to_global;
  NodeId center = 0;  // local id

  std::optional<NodeId> local_of(NodeId global) const;
};

inline constexpr int kUnreachable = -1;

// Hop distances from `source`, kUnreachable for other components.
std::vector<int> bfs_hops(const ConnectivityGraph& g, NodeId source, int max_depth = -1);

Subgraph induced_subgraph(const ConnectivityGraph& g, std::vector<NodeId> nodes,
                          std::optional<NodeId> center = std::nullopt);

// Induced subgraph on every node within k hops of u (u included).
Subgraph k_hop_subgraph(const ConnectivityGraph& g, NodeId u, int k);

// Connected component id per node, numbered by smallest member.
std::vector<NodeId> connected_components(const ConnectivityGraph& g);

}  // namespace bdr
