#pragma once

#include <string>
#include <vector>

#include "bdr/graph.hpp"

namespace bdr {

struct SvgStyle {
  double scale = 20.0;  // pixels per unit of communication range
  double node_radius = 0.12;
  bool draw_edges = true;
};

// One circle per node, filled by its class name (boundary, interior,
// mandatory, optional; anything else renders grey). Nodes and edges are
// emitted in id order so equal inputs give identical bytes.
std::string render_svg(const ConnectivityGraph& g, const std::vector<std::string>& classes,
                       const SvgStyle& style = {});

}  // namespace bdr
