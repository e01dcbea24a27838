#include "bdr/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "bdr/error.hpp"

namespace bdr {

namespace {

const char* fill_for(const std::string& cls) {
  if (cls == "boundary" || cls == "mandatory") return "#d62728";
  if (cls == "optional") return "#ff9f1c";
  if (cls == "interior") return "#9aa5b1";
  return "#555555";
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string render_svg(const ConnectivityGraph& g, const std::vector<std::string>& classes, const SvgStyle& style) {
  if (!g.has_positions()) throw Error("rendering needs node positions");
  if (classes.size() != g.size()) throw std::invalid_argument("one class per node required");

  double min_x = 0, min_y = 0, max_x = 1, max_y = 1;
  if (g.size() > 0) {
    min_x = max_x = g.position(0).x();
    min_y = max_y = g.position(0).y();
    for (const Point& p : g.positions()) {
      min_x = std::min(min_x, p.x());
      max_x = std::max(max_x, p.x());
      min_y = std::min(min_y, p.y());
      max_y = std::max(max_y, p.y());
    }
  }
  const double margin = 0.5;
  const double s = style.scale;
  // SVG y grows downward; flip so the picture matches the plane.
  auto sx = [&](double x) { return num((x - min_x + margin) * s); };
  auto sy = [&](double y) { return num((max_y - y + margin) * s); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num((max_x - min_x + 2 * margin) * s) +
         "\" height=\"" + num((max_y - min_y + 2 * margin) * s) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (style.draw_edges) {
    out += "<g stroke=\"#c8ced6\" stroke-width=\"" + num(0.02 * s) + "\">\n";
    for (const Edge& e : g.edges()) {
      const Point& a = g.position(e.u);
      const Point& b = g.position(e.v);
      out += "<line x1=\"" + sx(a.x()) + "\" y1=\"" + sy(a.y()) + "\" x2=\"" + sx(b.x()) + "\" y2=\"" + sy(b.y()) +
             "\"/>\n";
    }
    out += "</g>\n";
  }
  out += "<g>\n";
  for (NodeId v = 0; v < g.size(); ++v) {
    const Point& p = g.position(v);
    out += "<circle cx=\"" + sx(p.x()) + "\" cy=\"" + sy(p.y()) + "\" r=\"" + num(style.node_radius * s) +
           "\" fill=\"" + fill_for(classes[v]) + "\" class=\"" + classes[v] + "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace bdr
