#include "bdr/ecbr.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <tuple>

#include "bdr/error.hpp"

namespace bdr {

void EcBrParams::validate() const {
  if (circle_threshold < 3) throw ConfigError("ecbr.circle_threshold must be >= 3");
  if (!(gamma >= 0 && gamma <= 1)) throw ConfigError("ecbr.gamma must lie in [0, 1]");
  if (mis_threshold < 3) throw ConfigError("ecbr.mis_threshold must be >= 3");
}

RingSubgraph ring_subgraph(const Subgraph& view) {
  const auto hops = bfs_hops(view.graph, view.center, 2);
  std::vector<NodeId> layer;
  for (NodeId i = 0; i < hops.size(); ++i)
    if (hops[i] == 2) layer.push_back(i);
  Subgraph sub = induced_subgraph(view.graph, layer);
  RingSubgraph rs;
  rs.graph = std::move(sub.graph);
  rs.members.reserve(sub.to_global.size());
  for (NodeId local : sub.to_global) rs.members.push_back(view.to_global.empty() ? local : view.to_global[local]);
  rs.center = view.to_global.empty() ? view.center : view.to_global[view.center];
  return rs;
}

RingSubgraph ring_subgraph(const ConnectivityGraph& g, NodeId u) { return ring_subgraph(k_hop_subgraph(g, u, 2)); }

int max_tight_circle(const ConnectivityGraph& ring) {
  const std::size_t n = ring.size();
  if (n < 3) return 0;
  constexpr std::uint16_t kFar = 0x3fff;

  const auto comp = connected_components(ring);
  std::vector<std::vector<NodeId>> groups(n);
  for (NodeId v = 0; v < n; ++v) groups[comp[v]].push_back(v);

  std::vector<std::int32_t> slot(n, -1);
  std::vector<char> done(n, 0);
  std::vector<std::uint16_t> dist;
  std::deque<NodeId> queue;
  int best = 0;

  for (const auto& members : groups) {
    if (members.size() < 3) continue;
    NodeId start = members.front();
    for (NodeId v : members)
      if (ring.degree(v) > ring.degree(start)) start = v;

    const std::size_t size = members.size();
    dist.assign(size * size, kFar);
    auto row = [&](std::int32_t i) { return dist.data() + static_cast<std::size_t>(i) * size; };
    std::int32_t count = 0;
    slot[start] = count++;
    dist[0] = 0;
    queue.assign(1, start);

    while (!queue.empty()) {
      const NodeId v = queue.front();
      queue.pop_front();
      const std::int32_t sv = slot[v];
      for (NodeId w : ring.neighbors(v)) {
        if (done[w]) continue;
        if (slot[w] < 0) {
          // Tree edge: the new vertex sits one step beyond its parent.
          const std::int32_t sw = slot[w] = count++;
          std::uint16_t* rw = row(sw);
          const std::uint16_t* rv = row(sv);
          for (std::int32_t x = 0; x < sw; ++x) {
            rw[x] = static_cast<std::uint16_t>(rv[x] + 1);
            row(x)[sw] = rw[x];
          }
          rw[sw] = 0;
          queue.push_back(w);
          continue;
        }
        // Closing edge between two visited vertices.
        const std::int32_t sw = slot[w];
        best = std::max(best, row(sv)[sw] + 1);
        const std::uint16_t* rv = row(sv);
        const std::uint16_t* rw = row(sw);
        for (std::int32_t a = 0; a < count; ++a) {
          std::uint16_t* ra = row(a);
          const int dav = ra[sv];
          const int daw = ra[sw];
          // Only rows whose distance to one endpoint drops through the new edge change.
          if (dav + 1 < daw) {
            const auto via = static_cast<std::uint16_t>(dav + 1);
            for (std::int32_t b = 0; b < count; ++b) ra[b] = std::min<std::uint16_t>(ra[b], via + rw[b]);
          } else if (daw + 1 < dav) {
            const auto via = static_cast<std::uint16_t>(daw + 1);
            for (std::int32_t b = 0; b < count; ++b) ra[b] = std::min<std::uint16_t>(ra[b], via + rv[b]);
          }
        }
      }
      done[v] = 1;
    }
  }
  return best;
}

RingSubgraph mis_reduce(const RingSubgraph& rs) {
  const auto& g = rs.graph;
  const std::size_t n = g.size();
  std::vector<std::int32_t> rep(n, -1);  // index into the MIS, for MIS members
  std::vector<char> blocked(n, 0);
  std::vector<NodeId> mis;
  for (NodeId v = 0; v < n; ++v) {
    if (blocked[v]) continue;
    rep[v] = static_cast<std::int32_t>(mis.size());
    mis.push_back(v);
    for (NodeId w : g.neighbors(v)) blocked[w] = 1;
  }

  std::vector<std::vector<NodeId>> assigned(n);
  for (NodeId v = 0; v < n; ++v) {
    if (rep[v] >= 0) {
      assigned[v].push_back(static_cast<NodeId>(rep[v]));
      continue;
    }
    for (NodeId w : g.neighbors(v))
      if (rep[w] >= 0) assigned[v].push_back(static_cast<NodeId>(rep[w]));
  }

  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    for (NodeId a : assigned[e.u])
      for (NodeId b : assigned[e.v])
        if (a != b) edges.push_back({std::min(a, b), std::max(a, b)});
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.u, x.v) < std::tie(y.u, y.v);
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& x, const Edge& y) { return x.u == y.u && x.v == y.v; }),
              edges.end());

  RingSubgraph out;
  out.center = rs.center;
  out.graph = ConnectivityGraph::from_edges(mis.size(), edges, {}, false);
  for (NodeId v : mis) out.members.push_back(rs.members.empty() ? v : rs.members[v]);
  return out;
}

int ecbr_circle_length(const RingSubgraph& rs, const EcBrParams& params) {
  return params.use_mis_reduction ? max_tight_circle(mis_reduce(rs).graph) : max_tight_circle(rs.graph);
}

Verdict ecbr_verdict(int circle_length, const EcBrParams& params) {
  const int threshold = params.use_mis_reduction ? params.mis_threshold : params.circle_threshold;
  return circle_length >= threshold ? Verdict::Interior : Verdict::Boundary;
}

Verdict ecbr_classify_view(const Subgraph& view, const EcBrParams& params) {
  return ecbr_verdict(ecbr_circle_length(ring_subgraph(view), params), params);
}

Verdict ecbr_classify_node(const ConnectivityGraph& g, NodeId u, const EcBrParams& params) {
  return ecbr_classify_view(k_hop_subgraph(g, u, 2), params);
}

bool gamma_keeps(std::size_t marked, std::size_t degree, double gamma) {
  if (degree == 0) return true;
  return static_cast<double>(marked) >= gamma * static_cast<double>(degree) - 1e-9;
}

Classification ecbr_refine(const ConnectivityGraph& g, const Classification& cls, double gamma) {
  if (cls.size() != g.size()) throw std::invalid_argument("classification does not cover the graph");
  Classification out = cls;
  for (NodeId u = 0; u < g.size(); ++u) {
    if (cls[u] != Verdict::Boundary) continue;
    std::size_t marked = 0;
    for (NodeId v : g.neighbors(u)) marked += cls[v] == Verdict::Boundary;
    if (!gamma_keeps(marked, g.degree(u), gamma)) out[u] = Verdict::Interior;
  }
  return out;
}

namespace {

// Along-cycle distances must equal graph distances for every pair.
bool is_tight(const ConnectivityGraph& g, const std::vector<NodeId>& cycle) {
  const int len = static_cast<int>(cycle.size());
  std::vector<int> at(g.size(), -1);
  for (int i = 0; i < len; ++i) at[cycle[static_cast<std::size_t>(i)]] = i;
  for (int i = 0; i < len; ++i) {
    const auto hops = bfs_hops(g, cycle[static_cast<std::size_t>(i)], len / 2);
    for (int j = 0; j < len; ++j) {
      const int along = std::min(std::abs(i - j), len - std::abs(i - j));
      if (hops[cycle[static_cast<std::size_t>(j)]] != along) return false;
    }
  }
  return true;
}

// Shortest tight cycle through s with at least min_len vertices, built from
// BFS-tree paths joined by one non-tree edge across different subtrees of s.
std::vector<NodeId> tight_cycle_through(const ConnectivityGraph& g, NodeId s, int min_len) {
  const std::size_t n = g.size();
  std::vector<int> depth(n, -1);
  std::vector<NodeId> parent(n, s), branch(n, s);
  std::deque<NodeId> queue{s};
  depth[s] = 0;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (NodeId w : g.neighbors(v)) {
      if (depth[w] >= 0) continue;
      depth[w] = depth[v] + 1;
      parent[w] = v;
      branch[w] = v == s ? w : branch[v];
      queue.push_back(w);
    }
  }

  std::vector<std::tuple<int, NodeId, NodeId>> closers;
  for (NodeId a = 0; a < n; ++a) {
    if (depth[a] <= 0) continue;
    for (NodeId b : g.neighbors(a))
      if (b > a && depth[b] > 0 && branch[a] != branch[b]) closers.emplace_back(depth[a] + depth[b] + 1, a, b);
  }
  std::sort(closers.begin(), closers.end());

  std::vector<NodeId> cycle;
  for (const auto& [len, a, b] : closers) {
    if (len < min_len) continue;
    cycle.clear();
    for (NodeId x = a; x != s; x = parent[x]) cycle.push_back(x);
    cycle.push_back(s);
    std::reverse(cycle.begin(), cycle.end());
    for (NodeId x = b; x != s; x = parent[x]) cycle.push_back(x);
    if (is_tight(g, cycle)) return cycle;
  }
  return {};
}

}  // namespace

std::vector<std::vector<NodeId>> boundary_cycles(const ConnectivityGraph& g, std::span<const NodeId> candidates,
                                                 int circle_threshold) {
  std::vector<std::vector<NodeId>> cycles;
  if (candidates.empty()) return cycles;
  const Subgraph c = induced_subgraph(g, std::vector<NodeId>(candidates.begin(), candidates.end()));
  const std::size_t n = c.graph.size();
  std::vector<char> processed(n, 0);
  for (NodeId s = 0; s < n; ++s) {
    if (processed[s]) continue;
    const auto cycle = tight_cycle_through(c.graph, s, circle_threshold);
    std::size_t fresh = 0;
    for (NodeId x : cycle) fresh += !processed[x];
    // A cycle made mostly of already covered nodes retraces an emitted one.
    if (cycle.empty() || 2 * fresh <= cycle.size()) {
      processed[s] = 1;
      continue;
    }
    auto& out = cycles.emplace_back();
    for (NodeId x : cycle) {
      out.push_back(c.to_global[x]);
      processed[x] = 1;
      for (NodeId y : c.graph.neighbors(x)) processed[y] = 1;
    }
  }
  return cycles;
}

}  // namespace bdr
