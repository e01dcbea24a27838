#include "bdr/mdsbr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bdr/error.hpp"
#include "bdr/geometry.hpp"

namespace bdr {

namespace {

constexpr double kAngleEps = 1e-9;

double wrap_degrees(double a) {
  a = std::fmod(a, 360.0);
  return a < 0 ? a + 360.0 : a;
}

double bearing(const LocalEmbedding& emb, NodeId from, NodeId to) {
  const Point d = emb.at(to) - emb.at(from);
  return polar_degrees(d);
}

}  // namespace

std::string_view to_string(EmbeddingVariant v) {
  switch (v) {
    case EmbeddingVariant::MDS2: return "mds";
    case EmbeddingVariant::MDS3: return "mds3";
    case EmbeddingVariant::SSMDS: return "ssmds";
    case EmbeddingVariant::OPT: return "opt";
  }
  return "?";
}

EmbeddingVariant parse_variant(std::string_view name) {
  if (name == "mds" || name == "mds2") return EmbeddingVariant::MDS2;
  if (name == "mds3") return EmbeddingVariant::MDS3;
  if (name == "ssmds") return EmbeddingVariant::SSMDS;
  if (name == "opt") return EmbeddingVariant::OPT;
  throw ConfigError("unknown embedding variant '" + std::string(name) + "' (expected mds, mds3, ssmds, opt)");
}

std::string_view to_string(Verdict v) { return v == Verdict::Boundary ? "boundary" : "interior"; }

void MdsBrParams::validate() const {
  if (!(alpha_min > 0 && alpha_min < 360)) throw ConfigError("mdsbr.alpha_min must lie in (0, 360)");
  if (r_min < 0) throw ConfigError("mdsbr.r_min must be >= 0");
}

LocalEmbedding embed_view(const Subgraph& view, EmbeddingVariant variant) {
  const auto& g = view.graph;
  const std::size_t n = g.size();
  LocalEmbedding emb;
  emb.center = view.center;
  emb.coords.resize(static_cast<Eigen::Index>(n), 2);

  if (variant == EmbeddingVariant::OPT) {
    if (!g.has_positions()) throw EmbeddingError("variant opt needs true node positions");
    for (NodeId i = 0; i < n; ++i) emb.coords.row(i) = g.position(i).transpose();
    return emb;
  }

  const auto hops = bfs_hops(g, view.center);
  std::vector<NodeId> reach;
  for (NodeId i = 0; i < n; ++i)
    if (hops[i] != kUnreachable) reach.push_back(i);
  emb.coords.setConstant(std::numeric_limits<double>::quiet_NaN());

  const Subgraph comp = reach.size() == n ? Subgraph{g, {}, view.center}
                                          : induced_subgraph(g, reach, view.center);
  const DistanceMatrix d = variant == EmbeddingVariant::SSMDS ? signal_distance_matrix(comp.graph)
                                                              : hop_distance_matrix(comp.graph);
  Eigen::Matrix<double, Eigen::Dynamic, 2> xy(d.rows(), 2);
  if (d.rows() >= 3) {
    xy = classical_mds_2d(d, comp.center).coords;
  } else {
    xy.setZero();
    if (d.rows() == 2) xy(1, 0) = d(0, 1);
  }
  for (Eigen::Index i = 0; i < xy.rows(); ++i) emb.coords.row(reach[static_cast<std::size_t>(i)]) = xy.row(i);
  return emb;
}

std::vector<Gap> max_opening_gaps(const LocalEmbedding& emb, NodeId u, std::span<const NodeId> one_hop) {
  std::vector<std::pair<double, NodeId>> around;
  around.reserve(one_hop.size());
  for (NodeId v : one_hop) around.push_back({bearing(emb, u, v), v});
  std::sort(around.begin(), around.end());

  std::vector<Gap> gaps;
  const std::size_t m = around.size();
  if (m == 0) return gaps;
  if (m == 1) {
    gaps.push_back({360.0, around[0].second, around[0].second});
    return gaps;
  }
  for (std::size_t i = 0; i < m; ++i) {
    const auto& [a, v] = around[i];
    const auto& [b, w] = around[(i + 1) % m];
    gaps.push_back({i + 1 == m ? b + 360.0 - a : b - a, v, w});
  }
  std::stable_sort(gaps.begin(), gaps.end(), [](const Gap& x, const Gap& y) { return x.angle > y.angle; });
  return gaps;
}

bool cone_is_clear(const LocalEmbedding& emb, NodeId u, NodeId v, NodeId w, const ConnectivityGraph& view) {
  const double start = bearing(emb, u, v);
  const double width = v == w ? 360.0 : wrap_degrees(bearing(emb, u, w) - start);
  const auto nv = view.neighbors(v);
  const auto nw = view.neighbors(w);
  // Common neighbors by merging the sorted adjacency lists.
  auto i = nv.begin();
  auto j = nw.begin();
  while (i != nv.end() && j != nw.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      const NodeId x = *i;
      ++i;
      ++j;
      if (x == u) continue;
      const Point d = emb.at(x) - emb.at(u);
      if (!d.allFinite() || d.norm() < kGeomEps) continue;
      const double rel = wrap_degrees(polar_degrees(d) - start);
      if (rel > kAngleEps && rel < width - kAngleEps) return false;
    }
  }
  return true;
}

Verdict mdsbr_classify_embedded(const Subgraph& view, const LocalEmbedding& emb, const MdsBrParams& params) {
  const NodeId u = view.center;
  const auto one_hop = view.graph.neighbors(u);
  if (one_hop.size() < 2) return Verdict::Boundary;
  for (const Gap& gap : max_opening_gaps(emb, u, one_hop)) {
    if (gap.angle <= params.alpha_min) break;
    if (!params.micro_hole_filter || cone_is_clear(emb, u, gap.v, gap.w, view.graph)) return Verdict::Boundary;
  }
  return Verdict::Interior;
}

Verdict mdsbr_classify_view(const Subgraph& view, const MdsBrParams& params) {
  if (view.graph.degree(view.center) < 2) return Verdict::Boundary;
  return mdsbr_classify_embedded(view, embed_view(view, params.variant), params);
}

Verdict mdsbr_classify_node(const ConnectivityGraph& g, NodeId u, const MdsBrParams& params) {
  return mdsbr_classify_view(k_hop_subgraph(g, u, gather_radius(params.variant)), params);
}

bool refine_survives(const Subgraph& marked_view, int r_min) {
  if (r_min <= 0) return true;
  const auto& g = marked_view.graph;
  const NodeId u = marked_view.center;
  const auto du = bfs_hops(g, u);
  for (NodeId a = 0; a < g.size(); ++a) {
    if (du[a] == kUnreachable) continue;
    const auto da = a == u ? du : bfs_hops(g, a);
    for (NodeId b = 0; b < g.size(); ++b) {
      if (du[b] == kUnreachable || da[b] < r_min) continue;
      if (da[u] + du[b] == da[b]) return true;
    }
  }
  return false;
}

std::vector<NodeId> mdsbr_refine(const ConnectivityGraph& g, std::span<const NodeId> marked, int r_min) {
  std::vector<NodeId> nodes(marked.begin(), marked.end());
  std::sort(nodes.begin(), nodes.end());
  if (r_min <= 0) return nodes;
  const Subgraph m = induced_subgraph(g, nodes);
  std::vector<NodeId> kept;
  for (NodeId u = 0; u < m.graph.size(); ++u)
    if (refine_survives(k_hop_subgraph(m.graph, u, r_min), r_min)) kept.push_back(m.to_global[u]);
  return kept;
}

std::vector<NodeId> boundary_nodes(const Classification& cls) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < cls.size(); ++v)
    if (cls[v] == Verdict::Boundary) out.push_back(v);
  return out;
}

}  // namespace bdr
