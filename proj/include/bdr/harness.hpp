#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bdr/ecbr.hpp"
#include "bdr/graph.hpp"
#include "bdr/ground_truth.hpp"
#include "bdr/mdsbr.hpp"
#include "bdr/network.hpp"

namespace bdr {

// Messages sent per node in one phase and the largest payload, counted in
// node ids (an adjacency record of w costs 1 + deg(w)).
struct PhaseLedger {
  std::string phase;
  std::vector<std::uint32_t> messages;
  std::vector<std::uint32_t> max_payload;

  std::uint32_t max_messages() const;
  std::uint32_t largest_payload() const;
};

struct GatherResult {
  std::vector<Subgraph> views;  // views[u] is centered on u
  PhaseLedger ledger;
};

// k synchronous rounds; in each round every node forwards to its neighbors
// the adjacency records it learned in the previous round.
GatherResult run_gather_phase(const ConnectivityGraph& g, int k, std::string phase = "gather");

struct MetricTriple {
  std::optional<double> mandatory_fn_pct;       // Mandatory classified Interior
  std::optional<double> optional_interior_pct;  // Optional classified Interior
  std::optional<double> interior_fp_pct;        // Interior classified Boundary
};

MetricTriple evaluate(const GroundTruth& gt, const Classification& cls);

enum class AlgorithmKind : std::uint8_t { EcBr, MdsBr };

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::EcBr;
  bool refined = false;
  MdsBrParams mdsbr;
  EcBrParams ecbr;
  std::string name;  // empty: derived from kind and non-default parameters

  std::string label() const;
};

struct ExperimentConfig {
  NetworkConfig network;
  std::vector<AlgorithmSpec> algorithms;
  std::size_t trials = 25;
  std::uint64_t base_seed = 1;
  double h_min = 4.0;
  unsigned threads = 0;  // 0: BDR_THREADS or hardware concurrency
};

struct TrialRow {
  std::uint64_t seed = 0;
  MetricTriple metrics;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double d_avg_measured = 0;
};

struct PhaseMaximum {
  std::uint32_t messages = 0;
  std::uint32_t payload = 0;
};

struct MetricsReport {
  AlgorithmSpec spec;
  std::optional<double> mandatory_fn_pct;
  std::optional<double> optional_interior_pct;
  std::optional<double> interior_fp_pct;
  std::size_t trials = 0;
  std::vector<TrialRow> rows;
  std::map<int, std::size_t> circle_length_histogram;  // EC-BR only
  std::optional<double> avg_marked_neighborhood_size;  // refined MDS-BR only
  std::size_t d_max = 0;
  std::map<std::string, PhaseMaximum> ledger;
};

unsigned default_thread_count();

// Runs one algorithm on one network through the same gather and refinement
// phases as an experiment. For EC-BR the per-node circle lengths can be
// returned as well.
Classification classify_network(const ConnectivityGraph& g, const AlgorithmSpec& spec,
                                std::vector<int>* circle_lengths = nullptr);

// One report per algorithm, in the order given.
std::vector<MetricsReport> run_experiment(const ExperimentConfig& config);

std::map<int, std::size_t> circle_length_histogram(const ConnectivityGraph& g);

struct MisCalibration {
  int threshold = 0;
  std::map<int, std::size_t> interior_lengths;   // ground-truth Interior nodes
  std::map<int, std::size_t> mandatory_lengths;  // ground-truth Mandatory nodes
  double balanced_error = 0;
};

// Histogram-valley choice of the representative-graph threshold: the t that
// minimizes the mean of (Interior below t) and (Mandatory at or above t)
// fractions over `layouts` generated networks.
MisCalibration calibrate_mis_threshold(const NetworkConfig& network, std::size_t layouts, std::uint64_t base_seed,
                                       double h_min = 4.0);

void write_csv(std::ostream& out, const std::vector<MetricsReport>& reports);
nlohmann::json report_to_json(const std::vector<MetricsReport>& reports);

}  // namespace bdr
