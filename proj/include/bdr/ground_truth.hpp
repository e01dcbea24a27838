#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bdr/arrangement.hpp"
#include "bdr/graph.hpp"

namespace bdr {

enum class TruthLabel : std::uint8_t { Mandatory, Optional, Interior };

std::string_view to_string(TruthLabel label);

struct Hole {
  std::size_t face = 0;  // index into the face list
  double perimeter = 0;
  bool outer = false;
};

struct GroundTruth {
  std::vector<TruthLabel> labels;
  std::vector<Hole> holes;
  double h_min = 4.0;

  // Node counts per label, indexed by TruthLabel.
  std::array<std::size_t, 3> counts() const;
};

// Bounded faces whose perimeter reaches h_min, plus the outer face.
std::vector<Hole> identify_holes(const std::vector<Face>& faces, double h_min);

// Mandatory: a node vertex on some hole walk. Optional: within Euclidean
// distance 1 of a mandatory node. Interior: everything else.
GroundTruth classify_ground_truth(const ConnectivityGraph& g, const std::vector<Face>& faces,
                                  std::vector<Hole> holes, double h_min);

// planarize → extract_faces → identify_holes → classify_ground_truth.
GroundTruth compute_ground_truth(const ConnectivityGraph& g, double h_min = 4.0);

nlohmann::json ground_truth_to_json(const GroundTruth& gt);
GroundTruth ground_truth_from_json(const nlohmann::json& doc);

}  // namespace bdr
