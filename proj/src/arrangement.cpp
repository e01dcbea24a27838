#include "bdr/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "bdr/error.hpp"
#include "spatial_grid.hpp"

namespace bdr {

namespace {

struct Cut {
  double t;
  VertexId vertex;
};

[[noreturn]] void degenerate(const std::string& what) { throw DegeneracyError(what); }

std::string link_name(const Edge& e) {
  std::ostringstream s;
  s << "link (" << e.u << "," << e.v << ")";
  return s.str();
}

// Distance from p to segment ab when p projects strictly inside it.
bool touches_interior(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double len = ab.norm();
  const double along = ab.dot(p - a) / len;
  if (along <= kGeomEps || along >= len - kGeomEps) return false;
  return std::abs(cross2(ab, p - a)) / len < kGeomEps;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0U); }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace

Arrangement planarize(const ConnectivityGraph& g) {
  if (!g.has_positions()) throw Error("planarize needs node positions");
  const auto& pos = g.positions();
  const std::size_t n = g.size();

  Arrangement arr;
  arr.node_count = n;
  arr.vertices.assign(pos.begin(), pos.end());

  if (n > 0) {
    auto node_index = detail::make_grid(pos, 1.0);
    for (NodeId i = 0; i < n; ++i) node_index.insert(i, pos[i]);
    for (NodeId i = 0; i < n; ++i)
      node_index.for_near(pos[i], [&](std::uint32_t j) {
        if (j > i && (pos[i] - pos[j]).norm() < kGeomEps) {
          std::ostringstream s;
          s << "nodes " << i << " and " << j << " coincide";
          degenerate(s.str());
        }
      });
  }

  const std::vector<Edge> links = g.edges();
  std::vector<std::vector<Cut>> cuts(links.size());

  if (!links.empty()) {
    // Touching links have midpoints at most one link length apart, so a grid
    // with that cell size finds every candidate pair in the 3x3 block.
    std::vector<Point> mids;
    mids.reserve(links.size());
    double longest = 1e-6;
    for (const Edge& e : links) {
      mids.push_back((pos[e.u] + pos[e.v]) / 2);
      longest = std::max(longest, (pos[e.u] - pos[e.v]).norm());
    }
    auto link_index = detail::make_grid(mids, longest);
    for (std::uint32_t i = 0; i < links.size(); ++i) link_index.insert(i, mids[i]);

    for (std::uint32_t i = 0; i < links.size(); ++i) {
      const Edge& e = links[i];
      const Point& a = pos[e.u];
      const Point& b = pos[e.v];
      link_index.for_near(mids[i], [&](std::uint32_t j) {
        if (j <= i) return;
        const Edge& f = links[j];
        const Point& c = pos[f.u];
        const Point& d = pos[f.v];
        const bool shared = e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v;
        if (shared) {
          const NodeId pivot = (e.u == f.u || e.u == f.v) ? e.u : e.v;
          const Point p = pos[pivot];
          const Point x = pos[e.u == pivot ? e.v : e.u] - p;
          const Point y = pos[f.u == pivot ? f.v : f.u] - p;
          if (x.dot(y) > 0 && std::abs(cross2(x, y)) / (x.norm() * y.norm()) < kGeomEps)
            degenerate(link_name(e) + " overlaps " + link_name(f));
          return;
        }
        const bool tc = touches_interior(c, a, b);
        const bool td = touches_interior(d, a, b);
        const bool ta = touches_interior(a, c, d);
        const bool tb = touches_interior(b, c, d);
        if ((tc && td) || (ta && tb) || ((tc || td) && (ta || tb)))
          degenerate(link_name(e) + " overlaps " + link_name(f));
        if (tc || td || ta || tb) {
          // A node resting on another link splits that link at the node.
          auto at = [](const Point& q, const Point& from, const Point& to) {
            return (to - from).dot(q - from) / (to - from).squaredNorm();
          };
          if (tc) cuts[i].push_back({at(c, a, b), f.u});
          if (td) cuts[i].push_back({at(d, a, b), f.v});
          if (ta) cuts[j].push_back({at(a, c, d), e.u});
          if (tb) cuts[j].push_back({at(b, c, d), e.v});
          return;
        }
        const double o1 = cross2(b - a, c - a);
        const double o2 = cross2(b - a, d - a);
        const double o3 = cross2(d - c, a - c);
        const double o4 = cross2(d - c, b - c);
        if (!((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0))) return;
        if (!((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) return;
        const double te = o3 / (o3 - o4);
        const double tf = o1 / (o1 - o2);
        const auto v = static_cast<VertexId>(arr.vertices.size());
        arr.vertices.push_back(a + te * (b - a));
        cuts[i].push_back({te, v});
        cuts[j].push_back({tf, v});
      });
    }
  }

  // Cuts closer than the tolerance along a link are one point of the
  // drawing (several links through a common crossing); merge them, keeping
  // a node id as representative when one is involved.
  UnionFind same(arr.vertices.size());
  for (std::uint32_t i = 0; i < links.size(); ++i) {
    const Edge& e = links[i];
    auto& c = cuts[i];
    std::sort(c.begin(), c.end(), [](const Cut& x, const Cut& y) { return x.t < y.t; });
    const double len = (pos[e.v] - pos[e.u]).norm();
    double prev_t = 0;
    VertexId prev = e.u;
    for (const Cut& cut : c) {
      if ((cut.t - prev_t) * len < kGeomEps) {
        if (prev == e.u && cut.vertex >= n) degenerate("a crossing on " + link_name(e) + " sits on its endpoint");
        same.unite(prev, cut.vertex);
      }
      prev_t = cut.t;
      prev = cut.vertex;
    }
    if (!c.empty() && (1 - prev_t) * len < kGeomEps) {
      if (prev >= n) degenerate("a crossing on " + link_name(e) + " sits on its endpoint");
      same.unite(prev, e.v);
    }
  }
  for (VertexId v = 0; v < n; ++v)
    if (same.find(v) != v) degenerate("nodes " + std::to_string(same.find(v)) + " and " + std::to_string(v) + " coincide");

  // Drop merged-away crossing vertices and renumber the survivors.
  std::vector<VertexId> renumber(arr.vertices.size());
  {
    std::vector<Point> kept(arr.vertices.begin(), arr.vertices.begin() + static_cast<std::ptrdiff_t>(n));
    for (VertexId v = 0; v < arr.vertices.size(); ++v) {
      if (v < n) {
        renumber[v] = v;
      } else if (same.find(v) == v) {
        renumber[v] = static_cast<VertexId>(kept.size());
        kept.push_back(arr.vertices[v]);
      }
    }
    for (VertexId v = static_cast<VertexId>(n); v < arr.vertices.size(); ++v) renumber[v] = renumber[same.find(v)];
    arr.vertices = std::move(kept);
  }

  // Chain each link through its cuts; one sub-segment per gap.
  std::vector<double> he_angle;
  std::vector<VertexId> chain;
  for (std::uint32_t i = 0; i < links.size(); ++i) {
    const Edge& e = links[i];
    chain.assign(1, e.u);
    for (const Cut& cut : cuts[i]) {
      const VertexId v = renumber[cut.vertex];
      if (v != chain.back()) chain.push_back(v);
    }
    if (chain.back() != e.v) chain.push_back(e.v);

    const Point dir = pos[e.v] - pos[e.u];
    const double forward = std::atan2(dir.y(), dir.x());
    const double backward = std::atan2(-dir.y(), -dir.x());
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      arr.he_origin.push_back(chain[k]);
      arr.he_origin.push_back(chain[k + 1]);
      arr.he_link.push_back(i);
      arr.he_link.push_back(i);
      he_angle.push_back(forward);
      he_angle.push_back(backward);
    }
  }

  // Outgoing half-edges around each vertex in counterclockwise order.
  const std::size_t nv = arr.vertices.size();
  const std::size_t nh = arr.he_origin.size();
  std::vector<std::size_t> offset(nv + 1, 0);
  for (VertexId v : arr.he_origin) ++offset[v + 1];
  for (std::size_t v = 0; v < nv; ++v) offset[v + 1] += offset[v];
  std::vector<HalfEdgeId> around(nh);
  {
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (HalfEdgeId h = 0; h < nh; ++h) around[fill[arr.he_origin[h]]++] = h;
  }
  std::vector<std::size_t> slot(nh);
  for (std::size_t v = 0; v < nv; ++v) {
    auto first = around.begin() + static_cast<std::ptrdiff_t>(offset[v]);
    auto last = around.begin() + static_cast<std::ptrdiff_t>(offset[v + 1]);
    std::sort(first, last, [&](HalfEdgeId x, HalfEdgeId y) { return he_angle[x] < he_angle[y]; });
    for (std::size_t k = offset[v]; k < offset[v + 1]; ++k) slot[around[k]] = k;
  }
  arr.he_next.resize(nh);
  for (HalfEdgeId h = 0; h < nh; ++h) {
    const HalfEdgeId back = Arrangement::twin(h);
    const VertexId v = arr.he_origin[back];
    const std::size_t deg = offset[v + 1] - offset[v];
    const std::size_t k = slot[back] - offset[v];
    arr.he_next[h] = around[offset[v] + (k + deg - 1) % deg];
  }

  UnionFind uf(nv);
  for (HalfEdgeId h = 0; h < nh; h += 2) uf.unite(arr.he_origin[h], arr.he_origin[h + 1]);
  arr.vertex_component.resize(nv);
  std::vector<std::uint32_t> label(nv, UINT32_MAX);
  for (VertexId v = 0; v < nv; ++v) {
    const auto root = uf.find(v);
    if (label[root] == UINT32_MAX) label[root] = static_cast<std::uint32_t>(arr.component_count++);
    arr.vertex_component[v] = label[root];
  }
  return arr;
}

std::vector<Face> extract_faces(const Arrangement& a) {
  const std::size_t nh = a.he_origin.size();
  std::vector<Face> walks;
  std::vector<std::uint32_t> walk_component;
  std::vector<char> seen(nh, 0);
  for (HalfEdgeId start = 0; start < nh; ++start) {
    if (seen[start]) continue;
    Face f;
    auto& walk = f.walks.emplace_back();
    double twice_area = 0;
    HalfEdgeId h = start;
    do {
      seen[h] = 1;
      const Point& p = a.vertices[a.he_origin[h]];
      const Point& q = a.vertices[a.dest(h)];
      walk.push_back(a.he_origin[h]);
      f.perimeter += (q - p).norm();
      twice_area += p.x() * q.y() - q.x() * p.y();
      h = a.he_next[h];
    } while (h != start);
    f.signed_area = twice_area / 2;
    walk_component.push_back(a.vertex_component[walk.front()]);
    walks.push_back(std::move(f));
  }

  // The most negative walk of each connected piece is its outer boundary.
  std::vector<std::size_t> outer_of(a.component_count, SIZE_MAX);
  for (std::size_t i = 0; i < walks.size(); ++i) {
    auto& best = outer_of[walk_component[i]];
    if (best == SIZE_MAX || walks[i].signed_area < walks[best].signed_area) best = i;
  }

  std::vector<Face> faces;
  Face outer;
  outer.is_outer = true;
  std::vector<char> is_outer_walk(walks.size(), 0);
  for (std::size_t c = 0; c < a.component_count; ++c)
    if (outer_of[c] != SIZE_MAX) is_outer_walk[outer_of[c]] = 1;
  for (std::size_t i = 0; i < walks.size(); ++i) {
    if (is_outer_walk[i]) {
      outer.walks.push_back(std::move(walks[i].walks.front()));
      outer.perimeter += walks[i].perimeter;
      outer.signed_area += walks[i].signed_area;
    } else {
      faces.push_back(std::move(walks[i]));
    }
  }
  // Pieces without any segment: lone nodes sit on the exterior.
  for (VertexId v = 0; v < a.vertex_count(); ++v)
    if (outer_of[a.vertex_component[v]] == SIZE_MAX) outer.walks.push_back({v});
  faces.push_back(std::move(outer));
  return faces;
}

}  // namespace bdr
