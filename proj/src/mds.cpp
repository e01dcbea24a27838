#include "bdr/mds.hpp"

#include <array>
#include <limits>

namespace bdr {

DistanceMatrix hop_distance_matrix(const ConnectivityGraph& sub) {
  const auto n = static_cast<Eigen::Index>(sub.size());
  DistanceMatrix d(n, n);
  for (NodeId s = 0; s < sub.size(); ++s) {
    const auto hops = bfs_hops(sub, s);
    for (NodeId t = 0; t < sub.size(); ++t) {
      if (hops[t] == kUnreachable) throw EmbeddingError("hop distances undefined: subgraph is disconnected");
      d(s, t) = hops[t];
    }
  }
  return d;
}

DistanceMatrix signal_distance_matrix(const ConnectivityGraph& sub) {
  if (!sub.has_signal()) throw EmbeddingError("signal distances need per-link signal classes");
  const auto n = static_cast<Eigen::Index>(sub.size());
  DistanceMatrix d(n, n);
  // Lengths are multiples of 0.5, so doubled weights are 1 or 2 and three
  // rotating buckets serve as the Dijkstra queue.
  std::vector<int> dist(sub.size());
  std::vector<int> best(sub.size());
  std::array<std::vector<NodeId>, 3> bucket;
  for (NodeId s = 0; s < sub.size(); ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(best.begin(), best.end(), std::numeric_limits<int>::max());
    best[s] = 0;
    bucket[0].push_back(s);
    std::size_t pending = 1;
    for (int level = 0; pending > 0; ++level) {
      auto& current = bucket[static_cast<std::size_t>(level % 3)];
      for (std::size_t k = 0; k < current.size(); ++k) {
        const NodeId u = current[k];
        if (dist[u] != -1) continue;
        dist[u] = level;
        const auto nb = sub.neighbors(u);
        for (std::size_t i = 0; i < nb.size(); ++i) {
          const int w = level + (sub.signal_at(u, i) == Signal::Strong ? 1 : 2);
          if (dist[nb[i]] == -1 && w < best[nb[i]]) {
            best[nb[i]] = w;
            bucket[static_cast<std::size_t>(w % 3)].push_back(nb[i]);
            ++pending;
          }
        }
      }
      pending -= current.size();
      current.clear();
    }
    for (NodeId t = 0; t < sub.size(); ++t) {
      if (dist[t] == -1) throw EmbeddingError("signal distances undefined: subgraph is disconnected");
      d(s, t) = 0.5 * dist[t];
    }
  }
  return d;
}

}  // namespace bdr
