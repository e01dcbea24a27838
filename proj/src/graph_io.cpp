#include "bdr/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "bdr/error.hpp"

namespace bdr {

namespace {

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

void write_graph_text(std::ostream& out, const ConnectivityGraph& g) {
  if (!g.has_positions()) throw Error("text graph format requires node positions");
  out << g.size() << ' ' << g.edge_count() << '\n';
  for (const Point& p : g.positions()) out << shortest(p.x()) << ' ' << shortest(p.y()) << '\n';
  for (const Edge& e : g.edges())
    out << e.u << ' ' << e.v << ' ' << (e.signal == Signal::Strong ? 'S' : 'W') << '\n';
}

ConnectivityGraph read_graph_text(std::istream& in) {
  std::size_t n = 0, m = 0;
  if (!(in >> n >> m)) throw ConfigError("graph file: missing 'n m' header");
  std::vector<Point> positions(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x, y;
    if (!(in >> x >> y)) throw ConfigError("graph file: bad coordinates for node " + std::to_string(i));
    positions[i] = Point(x, y);
  }
  std::vector<Edge> edges(m);
  for (std::size_t i = 0; i < m; ++i) {
    NodeId u, v;
    char s;
    if (!(in >> u >> v >> s) || (s != 'S' && s != 'W'))
      throw ConfigError("graph file: bad edge line " + std::to_string(i));
    edges[i] = {u, v, s == 'S' ? Signal::Strong : Signal::Weak};
  }
  try {
    return ConnectivityGraph::from_edges(n, edges, std::move(positions), true);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("graph file: ") + e.what());
  }
}

nlohmann::json graph_to_json(const ConnectivityGraph& g) {
  nlohmann::json doc;
  doc["n"] = g.size();
  if (g.has_positions()) {
    auto& pos = doc["positions"] = nlohmann::json::array();
    for (const Point& p : g.positions()) pos.push_back({p.x(), p.y()});
  }
  auto& edges = doc["edges"] = nlohmann::json::array();
  for (const Edge& e : g.edges()) {
    if (g.has_signal())
      edges.push_back({e.u, e.v, e.signal == Signal::Strong ? "S" : "W"});
    else
      edges.push_back({e.u, e.v});
  }
  return doc;
}

ConnectivityGraph graph_from_json(const nlohmann::json& doc) {
  try {
    const auto n = doc.at("n").get<std::size_t>();
    std::vector<Point> positions;
    if (doc.contains("positions"))
      for (const auto& p : doc.at("positions")) positions.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    std::vector<Edge> edges;
    bool with_signal = true;
    for (const auto& e : doc.at("edges")) {
      Edge edge{e.at(0).get<NodeId>(), e.at(1).get<NodeId>()};
      if (e.size() > 2) {
        const auto s = e.at(2).get<std::string>();
        if (s != "S" && s != "W") throw ConfigError("graph json: edge signal must be S or W");
        edge.signal = s == "S" ? Signal::Strong : Signal::Weak;
      } else {
        with_signal = false;
      }
      edges.push_back(edge);
    }
    return ConnectivityGraph::from_edges(n, edges, std::move(positions), with_signal);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("graph json: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("graph json: ") + e.what());
  }
}

void save_graph(const std::string& path, const ConnectivityGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  if (ends_with(path, ".json"))
    out << graph_to_json(g).dump() << '\n';
  else
    write_graph_text(out, g);
}

ConnectivityGraph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  if (ends_with(path, ".json")) {
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(path + ": " + e.what());
    }
    return graph_from_json(doc);
  }
  return read_graph_text(in);
}

}  // namespace bdr
