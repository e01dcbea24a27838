#include "bdr/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bdr {

ConnectivityGraph ConnectivityGraph::from_edges(std::size_t n, std::span<const Edge> edges,
                                                std::vector<Point> positions, bool with_signal) {
  if (!positions.empty() && positions.size() != n)
    throw std::invalid_argument("position count " + std::to_string(positions.size()) +
                                " does not match node count " + std::to_string(n));

  std::vector<std::size_t> deg(n, 0);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n)
      throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  ") references a node outside 0.." + std::to_string(n));
    if (e.u == e.v) throw std::invalid_argument("self-loop at node " + std::to_string(e.u));
    ++deg[e.u];
    ++deg[e.v];
  }

  ConnectivityGraph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];

  std::vector<std::pair<NodeId, Signal>> slots(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : edges) {
    slots[fill[e.u]++] = {e.v, e.signal};
    slots[fill[e.v]++] = {e.u, e.signal};
  }

  g.adjacency_.resize(slots.size());
  g.signals_.resize(slots.size());
  for (std::size_t u = 0; u < n; ++u) {
    auto first = slots.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]);
    auto last = slots.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]);
    std::sort(first, last, [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto it = first; it != last; ++it) {
      if (it != first && std::prev(it)->first == it->first)
        throw std::invalid_argument("duplicate edge (" + std::to_string(u) + "," +
                                    std::to_string(it->first) + ")");
      const auto idx = static_cast<std::size_t>(it - slots.begin());
      g.adjacency_[idx] = it->first;
      g.signals_[idx] = it->second;
    }
  }
  g.positions_ = std::move(positions);
  g.has_signal_ = with_signal;
  return g;
}

bool ConnectivityGraph::adjacent(NodeId u, NodeId v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<Signal> ConnectivityGraph::signal(NodeId u, NodeId v) const {
  if (!has_signal_) return std::nullopt;
  const auto nb = neighbors(u);
  const auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return signals_[offsets_[u] + static_cast<std::size_t>(it - nb.begin())];
}

std::vector<Edge> ConnectivityGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < size(); ++u) {
    const auto nb = neighbors(u);
    for (std::size_t i = 0; i < nb.size(); ++i)
      if (u < nb[i]) out.push_back({u, nb[i], signal_at(u, i)});
  }
  return out;
}

std::size_t ConnectivityGraph::max_degree() const {
  std::size_t best = 0;
  for (NodeId u = 0; u < size(); ++u) best = std::max(best, degree(u));
  return best;
}

std::optional<NodeId> Subgraph::local_of(NodeId global) const {
  const auto it = std::lower_bound(to_global.begin(), to_global.end(), global);
  if (it == to_global.end() || *it != global) return std::nullopt;
  return static_cast<NodeId>(it - to_global.begin());
}

std::vector<int> bfs_hops(const ConnectivityGraph& g, NodeId source, int max_depth) {
  std::vector<int> dist(g.size(), kUnreachable);
  std::deque<NodeId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    if (max_depth >= 0 && dist[v] >= max_depth) continue;
    for (NodeId w : g.neighbors(v)) {
      if (dist[w] != kUnreachable) continue;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

Subgraph induced_subgraph(const ConnectivityGraph& g, std::vector<NodeId> nodes,
                          std::optional<NodeId> center) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  Subgraph sub;
  sub.to_global = std::move(nodes);
  const auto& ids = sub.to_global;

  std::vector<Edge> edges;
  std::vector<Point> positions;
  if (g.has_positions()) positions.reserve(ids.size());
  for (NodeId local = 0; local < ids.size(); ++local) {
    const NodeId u = ids[local];
    if (g.has_positions()) positions.push_back(g.position(u));
    const auto nb = g.neighbors(u);
    // merge-walk the two sorted lists
    std::size_t j = 0;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] <= u) continue;
      while (j < ids.size() && ids[j] < nb[i]) ++j;
      if (j == ids.size()) break;
      if (ids[j] == nb[i]) edges.push_back({local, static_cast<NodeId>(j), g.signal_at(u, i)});
    }
  }
  sub.graph = ConnectivityGraph::from_edges(ids.size(), edges, std::move(positions), g.has_signal());
  if (center) {
    const auto c = sub.local_of(*center);
    if (!c) throw std::invalid_argument("center is not part of the subgraph");
    sub.center = *c;
  }
  return sub;
}

Subgraph k_hop_subgraph(const ConnectivityGraph& g, NodeId u, int k) {
  if (u >= g.size()) throw std::invalid_argument("node id out of range");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  // Local BFS with a small visited list to keep this O(|neighborhood|).
  std::vector<NodeId> frontier{u};
  std::vector<NodeId> members{u};
  std::vector<NodeId> next;
  for (int depth = 0; depth < k; ++depth) {
    next.clear();
    for (NodeId v : frontier)
      for (NodeId w : g.neighbors(v)) next.push_back(w);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    std::vector<NodeId> fresh;
    std::sort(members.begin(), members.end());
    std::set_difference(next.begin(), next.end(), members.begin(), members.end(),
                        std::back_inserter(fresh));
    members.insert(members.end(), fresh.begin(), fresh.end());
    frontier = std::move(fresh);
  }
  return induced_subgraph(g, std::move(members), u);
}

std::vector<NodeId> connected_components(const ConnectivityGraph& g) {
  const NodeId none = static_cast<NodeId>(-1);
  std::vector<NodeId> comp(g.size(), none);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.size(); ++s) {
    if (comp[s] != none) continue;
    comp[s] = s;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : g.neighbors(v)) {
        if (comp[w] != none) continue;
        comp[w] = s;
        stack.push_back(w);
      }
    }
  }
  return comp;
}

}  // namespace bdr
