#pragma once

#include <span>
#include <vector>

#include "bdr/graph.hpp"
#include "bdr/mdsbr.hpp"

namespace bdr {

// Nodes at hop distance exactly 2 from the center with their induced edges.
// Local ids follow ascending global id; members maps local -> global.
struct RingSubgraph {
  ConnectivityGraph graph;
  std::vector<NodeId> members;
  NodeId center = 0;  // global id
};

// Threshold on representative-graph circle lengths after MIS reduction.
// `bdr calibrate --preset cross --layouts 10` puts the histogram valley at 4
// (balanced error 3.7%); see README.
inline constexpr int kDefaultMisThreshold = 4;

struct EcBrParams {
  int circle_threshold = 6;
  double gamma = 1.0;
  bool use_mis_reduction = false;
  int mis_threshold = kDefaultMisThreshold;

  void validate() const;  // throws ConfigError
};

RingSubgraph ring_subgraph(const ConnectivityGraph& g, NodeId u);
// Same ring extracted from a gathered view of radius >= 2; members keep the
// view's global ids.
RingSubgraph ring_subgraph(const Subgraph& view);

// Longest circle closed by the breadth-first search that tracks all-pairs
// distances among visited vertices; 0 when the ring has no cycle.
int max_tight_circle(const ConnectivityGraph& ring);

// Representative graph over a greedy maximal independent set.
RingSubgraph mis_reduce(const RingSubgraph& rs);

// Circle length the classifier compares against its threshold.
int ecbr_circle_length(const RingSubgraph& rs, const EcBrParams& params);
Verdict ecbr_verdict(int circle_length, const EcBrParams& params);

Verdict ecbr_classify_view(const Subgraph& view, const EcBrParams& params);
Verdict ecbr_classify_node(const ConnectivityGraph& g, NodeId u, const EcBrParams& params);

// Whether a Boundary node with `marked` Boundary neighbors out of `degree`
// keeps its verdict.
bool gamma_keeps(std::size_t marked, std::size_t degree, double gamma);

// Single synchronous pass; Interior verdicts never change.
Classification ecbr_refine(const ConnectivityGraph& g, const Classification& cls, double gamma);

// Greedy extraction of closed boundary walks inside the candidate-induced
// subgraph. Each cycle lists global ids, consecutive entries adjacent and the
// last adjacent to the first.
std::vector<std::vector<NodeId>> boundary_cycles(const ConnectivityGraph& g, std::span<const NodeId> candidates,
                                                 int circle_threshold = 6);

}  // namespace bdr
