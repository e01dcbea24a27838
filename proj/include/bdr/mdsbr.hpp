#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "bdr/graph.hpp"
#include "bdr/mds.hpp"

namespace bdr {

enum class EmbeddingVariant : std::uint8_t { MDS2, MDS3, SSMDS, OPT };

std::string_view to_string(EmbeddingVariant v);
EmbeddingVariant parse_variant(std::string_view name);  // throws ConfigError

// Hop radius of the neighborhood each variant gathers.
inline int gather_radius(EmbeddingVariant v) { return v == EmbeddingVariant::MDS3 ? 3 : 2; }

enum class Verdict : std::uint8_t { Interior, Boundary };
using Classification = std::vector<Verdict>;

std::string_view to_string(Verdict v);

struct MdsBrParams {
  double alpha_min = 90.0;  // degrees
  int r_min = 3;            // 0 disables refinement
  EmbeddingVariant variant = EmbeddingVariant::MDS2;
  bool micro_hole_filter = true;

  void validate() const;  // throws ConfigError
};

// Virtual coordinates for a gathered view. OPT copies true positions; the
// other variants embed the connected component of the center.
LocalEmbedding embed_view(const Subgraph& view, EmbeddingVariant variant);

struct Gap {
  double angle = 0;  // degrees
  NodeId v = 0;      // gap runs counterclockwise from v to w
  NodeId w = 0;
};

// Consecutive angular gaps between the given neighbors around u, largest
// first. A single neighbor yields one 360 degree gap from it to itself; no
// neighbors yields an empty list.
std::vector<Gap> max_opening_gaps(const LocalEmbedding& emb, NodeId u, std::span<const NodeId> one_hop);

// True iff no common neighbor of v and w other than u sits strictly inside
// the counterclockwise sector from u->v to u->w. Ids are local to `view`.
bool cone_is_clear(const LocalEmbedding& emb, NodeId u, NodeId v, NodeId w, const ConnectivityGraph& view);

// Base test on an already embedded view; ids in `emb` are view-local.
Verdict mdsbr_classify_embedded(const Subgraph& view, const LocalEmbedding& emb, const MdsBrParams& params);
Verdict mdsbr_classify_view(const Subgraph& view, const MdsBrParams& params);
Verdict mdsbr_classify_node(const ConnectivityGraph& g, NodeId u, const MdsBrParams& params);

// Survival test on u's marked neighborhood: u lies on a shortest path of at
// least r_min hops between members of the view.
bool refine_survives(const Subgraph& marked_view, int r_min);

// Single synchronous refinement pass; returns the surviving subset of `marked`.
std::vector<NodeId> mdsbr_refine(const ConnectivityGraph& g, std::span<const NodeId> marked, int r_min);

std::vector<NodeId> boundary_nodes(const Classification& cls);

}  // namespace bdr
