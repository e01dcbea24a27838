#pragma once

#include <cstdint>
#include <vector>

#include "bdr/geometry.hpp"
#include "bdr/graph.hpp"

namespace bdr {

using VertexId = std::uint32_t;
using HalfEdgeId = std::uint32_t;

// Planar subdivision induced by drawing every link as a straight segment.
// Vertices 0..n-1 are the sensor nodes (same ids as the graph); the
// remaining vertices are segment crossings. Half-edges come in pairs, so the
// twin of h is h ^ 1. next() walks a face with the face on the left.
struct Arrangement {
  std::vector<Point> vertices;
  std::size_t node_count = 0;

  std::vector<VertexId> he_origin;
  std::vector<HalfEdgeId> he_next;
  // Original link each sub-segment was cut from.
  std::vector<std::uint32_t> he_link;

  std::vector<std::uint32_t> vertex_component;
  std::size_t component_count = 0;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t edge_count() const { return he_origin.size() / 2; }
  static HalfEdgeId twin(HalfEdgeId h) { return h ^ 1U; }
  VertexId dest(HalfEdgeId h) const { return he_origin[twin(h)]; }
  double length(HalfEdgeId h) const { return (vertices[dest(h)] - vertices[he_origin[h]]).norm(); }
  bool is_node(VertexId v) const { return v < node_count; }
};

// Cuts every link at its crossings with other links. Points of the drawing
// closer than the geometric tolerance along a link become one vertex, and a
// node lying on another link splits it. Throws DegeneracyError for
// coincident nodes, collinear overlapping links, or a crossing on a link's
// own endpoint.
Arrangement planarize(const ConnectivityGraph& g);

struct Face {
  // One closed walk for bounded faces. The outer face collects the outer
  // walk of every connected piece of the drawing (isolated nodes contribute
  // a single-vertex walk).
  std::vector<std::vector<VertexId>> walks;
  double perimeter = 0;
  double signed_area = 0;
  bool is_outer = false;
};

// Bounded faces first, the single merged outer face last.
std::vector<Face> extract_faces(const Arrangement& a);

}  // namespace bdr
