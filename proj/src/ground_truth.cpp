#include "bdr/ground_truth.hpp"

#include <string>

#include "bdr/error.hpp"
#include "spatial_grid.hpp"

namespace bdr {

std::string_view to_string(TruthLabel label) {
  switch (label) {
    case TruthLabel::Mandatory: return "mandatory";
    case TruthLabel::Optional: return "optional";
    case TruthLabel::Interior: return "interior";
  }
  return "?";
}

std::array<std::size_t, 3> GroundTruth::counts() const {
  std::array<std::size_t, 3> c{};
  for (TruthLabel l : labels) ++c[static_cast<std::size_t>(l)];
  return c;
}

std::vector<Hole> identify_holes(const std::vector<Face>& faces, double h_min) {
  std::vector<Hole> holes;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face& f = faces[i];
    if (f.is_outer || f.perimeter >= h_min) holes.push_back({i, f.perimeter, f.is_outer});
  }
  return holes;
}

GroundTruth classify_ground_truth(const ConnectivityGraph& g, const std::vector<Face>& faces,
                                  std::vector<Hole> holes, double h_min) {
  const std::size_t n = g.size();
  GroundTruth gt;
  gt.h_min = h_min;
  gt.labels.assign(n, TruthLabel::Interior);
  for (const Hole& h : holes)
    for (const auto& walk : faces[h.face].walks)
      for (VertexId v : walk)
        if (v < n) gt.labels[v] = TruthLabel::Mandatory;
  gt.holes = std::move(holes);

  if (n == 0 || !g.has_positions()) return gt;
  const auto& pos = g.positions();
  auto index = detail::make_grid(pos, 1.0);
  for (NodeId v = 0; v < n; ++v)
    if (gt.labels[v] == TruthLabel::Mandatory) index.insert(v, pos[v]);
  for (NodeId v = 0; v < n; ++v) {
    if (gt.labels[v] != TruthLabel::Interior) continue;
    bool near = false;
    index.for_near(pos[v], [&](std::uint32_t m) { near = near || (pos[m] - pos[v]).squaredNorm() <= 1.0; });
    if (near) gt.labels[v] = TruthLabel::Optional;
  }
  return gt;
}

GroundTruth compute_ground_truth(const ConnectivityGraph& g, double h_min) {
  const Arrangement arr = planarize(g);
  const std::vector<Face> faces = extract_faces(arr);
  return classify_ground_truth(g, faces, identify_holes(faces, h_min), h_min);
}

nlohmann::json ground_truth_to_json(const GroundTruth& gt) {
  nlohmann::json doc;
  doc["h_min"] = gt.h_min;
  auto& labels = doc["labels"] = nlohmann::json::object();
  for (std::size_t v = 0; v < gt.labels.size(); ++v) labels[std::to_string(v)] = to_string(gt.labels[v]);
  auto& holes = doc["holes"] = nlohmann::json::array();
  for (const Hole& h : gt.holes) holes.push_back({{"perimeter", h.perimeter}, {"outer", h.outer}});
  return doc;
}

GroundTruth ground_truth_from_json(const nlohmann::json& doc) {
  try {
    GroundTruth gt;
    gt.h_min = doc.value("h_min", 4.0);
    const auto& labels = doc.at("labels");
    gt.labels.assign(labels.size(), TruthLabel::Interior);
    for (const auto& [key, value] : labels.items()) {
      const std::size_t id = std::stoul(key);
      if (id >= gt.labels.size()) throw ConfigError("ground truth: node id " + key + " out of range");
      const auto s = value.get<std::string>();
      if (s == "mandatory") gt.labels[id] = TruthLabel::Mandatory;
      else if (s == "optional") gt.labels[id] = TruthLabel::Optional;
      else if (s == "interior") gt.labels[id] = TruthLabel::Interior;
      else throw ConfigError("ground truth: unknown label '" + s + "'");
    }
    if (doc.contains("holes"))
      for (const auto& h : doc.at("holes"))
        gt.holes.push_back({0, h.at("perimeter").get<double>(), h.at("outer").get<bool>()});
    return gt;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("ground truth: ") + e.what());
  }
}

}  // namespace bdr
