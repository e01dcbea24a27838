#include <doctest.h>

#include <sstream>

#include "bdr/harness.hpp"
#include "support.hpp"

using namespace bdr;
using namespace bdr::testing;

namespace {

std::string csv_of(const ExperimentConfig& cfg) {
  std::ostringstream out;
  write_csv(out, run_experiment(cfg));
  return out.str();
}

ExperimentConfig small_experiment() {
  ExperimentConfig cfg;
  cfg.network.area_width = cfg.network.area_height = 12;
  cfg.network.hole_mask = hole_preset("diamond", 12, 12);
  cfg.trials = 3;
  cfg.base_seed = 11;
  AlgorithmSpec ecbr, ecbr_ref, mdsbr_ref;
  ecbr_ref.refined = true;
  mdsbr_ref.kind = AlgorithmKind::MdsBr;
  mdsbr_ref.refined = true;
  cfg.algorithms = {ecbr, ecbr_ref, mdsbr_ref};
  return cfg;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("gathered views equal direct k-hop neighborhoods") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto g = random_graph(25, 0.12, 500 + seed);
    const int k = 1 + static_cast<int>(seed % 3);
    const auto gathered = run_gather_phase(g, k);
    REQUIRE(gathered.views.size() == g.size());
    CHECK(gathered.ledger.max_messages() <= static_cast<std::uint32_t>(k));
    for (NodeId u = 0; u < g.size(); ++u) {
      const auto direct = k_hop_subgraph(g, u, k);
      CHECK(gathered.views[u].to_global == direct.to_global);
      CHECK(gathered.views[u].graph == direct.graph);
      CHECK(gathered.views[u].center == direct.center);
    }
  }
}

TEST_CASE("one round gives closed neighborhoods") {
  const auto g = random_graph(20, 0.2, 3);
  const auto gathered = run_gather_phase(g, 1);
  for (NodeId u = 0; u < g.size(); ++u) {
    std::vector<NodeId> want(g.neighbors(u).begin(), g.neighbors(u).end());
    want.push_back(u);
    std::sort(want.begin(), want.end());
    CHECK(gathered.views[u].to_global == want);
  }
  CHECK(gathered.ledger.max_messages() <= 1);
}

TEST_CASE("two-round gather respects the message bound") {
  NetworkConfig cfg;
  cfg.area_width = cfg.area_height = 10;
  const auto g = generate_network(cfg);
  const auto gathered = run_gather_phase(g, 2);
  CHECK(gathered.ledger.max_messages() <= 2);
  // largest record batch: a node forwards at most its 1-hop records twice
  CHECK(gathered.ledger.largest_payload() <= (g.max_degree() + 1) * (g.max_degree() + 1));
}

TEST_CASE("metric examples") {
  GroundTruth gt;
  using L = TruthLabel;
  gt.labels = {L::Mandatory, L::Mandatory, L::Mandatory, L::Mandatory, L::Optional,
               L::Optional,  L::Interior,  L::Interior,  L::Interior,  L::Interior};
  Classification perfect{Verdict::Boundary, Verdict::Boundary, Verdict::Boundary, Verdict::Boundary,
                         Verdict::Boundary, Verdict::Interior, Verdict::Interior, Verdict::Interior,
                         Verdict::Interior, Verdict::Interior};
  auto m = evaluate(gt, perfect);
  CHECK(*m.mandatory_fn_pct == 0.0);
  CHECK(*m.optional_interior_pct == 50.0);
  CHECK(*m.interior_fp_pct == 0.0);

  Classification missed = perfect;
  missed[2] = Verdict::Interior;
  CHECK(*evaluate(gt, missed).mandatory_fn_pct == 25.0);

  const Classification all_boundary(10, Verdict::Boundary);
  m = evaluate(gt, all_boundary);
  CHECK(*m.mandatory_fn_pct == 0.0);
  CHECK(*m.interior_fp_pct == 100.0);

  GroundTruth no_interior;
  no_interior.labels = {L::Mandatory, L::Optional};
  m = evaluate(no_interior, Classification(2, Verdict::Boundary));
  CHECK_FALSE(m.interior_fp_pct.has_value());
  CHECK(m.mandatory_fn_pct.has_value());

  CHECK_THROWS_AS(evaluate(gt, Classification(3)), std::invalid_argument);
}

TEST_CASE("labels") {
  AlgorithmSpec s;
  CHECK(s.label() == "ecbr");
  s.refined = true;
  CHECK(s.label() == "ecbr+ref");
  s.kind = AlgorithmKind::MdsBr;
  s.mdsbr.variant = EmbeddingVariant::SSMDS;
  CHECK(s.label() == "mdsbr-ssmds+ref");
  s.name = "custom";
  CHECK(s.label() == "custom");
}

TEST_CASE("ecbr on a path marks everything") {
  const auto g = path_graph(6);
  AlgorithmSpec s;
  std::vector<int> lengths;
  const auto cls = classify_network(g, s, &lengths);
  CHECK(cls == Classification(6, Verdict::Boundary));
  CHECK(lengths == std::vector<int>(6, 0));
}

TEST_CASE("circle length histogram") {
  CHECK(circle_length_histogram(ConnectivityGraph{}).empty());
  NetworkConfig cfg;
  cfg.area_width = cfg.area_height = 8;
  const auto g = generate_network(cfg);
  std::size_t total = 0;
  for (const auto& [len, count] : circle_length_histogram(g)) total += count;
  CHECK(total == g.size());
}

TEST_CASE("reports are reproducible and independent of worker count") {
  auto cfg = small_experiment();
  cfg.threads = 1;
  const auto one = csv_of(cfg);
  CHECK(csv_of(cfg) == one);
  cfg.threads = 4;
  CHECK(csv_of(cfg) == one);

  std::istringstream lines(one);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "seed,algorithm,refined,mandatory_fn_pct,optional_interior_pct,interior_fp_pct,nodes,edges,d_avg_measured");
  std::size_t rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == cfg.trials * cfg.algorithms.size());
}

TEST_CASE("experiment reports carry ledgers and side statistics") {
  auto cfg = small_experiment();
  cfg.trials = 2;
  const auto reports = run_experiment(cfg);
  REQUIRE(reports.size() == 3);
  for (const auto& r : reports) {
    CHECK(r.trials == 2);
    CHECK(r.rows.size() == 2);
    CHECK(r.mandatory_fn_pct.has_value());
    REQUIRE(r.ledger.count("gather-2") == 1);
    CHECK(r.ledger.at("gather-2").messages <= 2);
  }
  CHECK_FALSE(reports[0].circle_length_histogram.empty());
  CHECK(reports[1].ledger.at("ecbr-refine").messages <= 2);
  CHECK(reports[2].avg_marked_neighborhood_size.has_value());
  CHECK(reports[2].ledger.at("mdsbr-refine").messages <= 3);

  const auto doc = report_to_json(reports);
  CHECK(doc.size() == 3);
  CHECK(doc[2]["algorithm"] == "mdsbr+ref");
}

TEST_CASE("threshold calibration produces both histograms") {
  NetworkConfig net;
  net.area_width = net.area_height = 12;
  net.hole_mask = hole_preset("diamond", 12, 12);
  const auto cal = calibrate_mis_threshold(net, 2, 1);
  CHECK_FALSE(cal.interior_lengths.empty());
  CHECK_FALSE(cal.mandatory_lengths.empty());
  CHECK(cal.threshold >= 1);
  CHECK(cal.balanced_error >= 0.0);
  CHECK(cal.balanced_error <= 0.5);
}

}
