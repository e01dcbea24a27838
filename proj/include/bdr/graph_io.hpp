#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "bdr/graph.hpp"

namespace bdr {

// Line-oriented text format:
//   n m
//   x y            (n lines)
//   u v S|W        (m lines, u < v)
// Coordinates are written with 17 significant digits so a round trip is exact.
void write_graph_text(std::ostream& out, const ConnectivityGraph& g);
ConnectivityGraph read_graph_text(std::istream& in);

nlohmann::json graph_to_json(const ConnectivityGraph& g);
ConnectivityGraph graph_from_json(const nlohmann::json& doc);

// Picks the format from the extension (.json → JSON, anything else → text).
void save_graph(const std::string& path, const ConnectivityGraph& g);
ConnectivityGraph load_graph(const std::string& path);

}  // namespace bdr
