#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bdr/config.hpp"
#include "bdr/ecbr.hpp"
#include "bdr/error.hpp"
#include "bdr/graph_io.hpp"
#include "bdr/ground_truth.hpp"
#include "bdr/harness.hpp"
#include "bdr/svg.hpp"

using namespace bdr;
using nlohmann::json;

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> degree;
  std::optional<double> spacing;
  std::optional<std::string> preset;
  std::optional<double> width, height;
  std::optional<double> qudg;
  bool random = false;
};

void add_network_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "network seed");
  cmd->add_option("--degree", o.degree, "target average degree");
  cmd->add_option("--spacing", o.spacing, "perturbed-grid spacing");
  cmd->add_option("--preset", o.preset, "hole preset (none, cross, rectangles, diamond, lshape, notch)");
  cmd->add_option("--width", o.width, "area width");
  cmd->add_option("--height", o.height, "area height");
  cmd->add_option("--qudg", o.qudg, "use the d-QUDG model with this reliable radius");
  cmd->add_flag("--random", o.random, "random instead of perturbed-grid placement");
}

// Flags are applied as edits to the JSON document before the strict parse,
// so they go through the same validation as config files.
CliConfig resolve(const Overrides& o) {
  json doc = json::object();
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("config file '" + o.config_path + "' is not valid JSON: " + e.what());
    }
  }
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  json& net = doc["network"];
  if (net.is_null()) net = json::object();
  if (!net.is_object()) throw ConfigError("config field 'network': expected an object");
  if (o.seed) net["seed"] = *o.seed;
  if (o.degree) net["target_avg_degree"] = *o.degree;
  if (o.preset) net["hole_preset"] = *o.preset;
  if (o.width) net["area_width"] = *o.width;
  if (o.height) net["area_height"] = *o.height;
  if (o.qudg) net["comm_model"] = {{"kind", "qudg"}, {"d", *o.qudg}};
  if (o.random) net["placement"] = {{"kind", "random"}};
  if (o.spacing) net["placement"] = {{"kind", "perturbed_grid"}, {"spacing", *o.spacing}};
  if (o.degree && !o.spacing && !o.random && net.contains("placement") && net["placement"].is_object())
    net["placement"].erase("spacing");
  return parse_config(doc);
}

json verdicts_to_json(const Classification& cls) {
  json v = json::object();
  for (NodeId u = 0; u < cls.size(); ++u) v[std::to_string(u)] = std::string(to_string(cls[u]));
  return v;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary recognition simulator for sensor networks"};
  app.require_subcommand(1);

  Overrides net;
  std::string out_path;

  auto* gen = app.add_subcommand("generate", "generate a network and write it as text or JSON");
  add_network_flags(gen, net);
  gen->add_option("-o,--out", out_path, "graph file (.json for JSON, otherwise text)")->required();

  std::string graph_path;
  double h_min = 4.0;
  auto* truth = app.add_subcommand("truth", "compute ground-truth labels for a graph");
  truth->add_option("-g,--graph", graph_path, "graph file")->required()->check(CLI::ExistingFile);
  truth->add_option("--h-min", h_min, "minimum hole perimeter");
  truth->add_option("-o,--out", out_path, "output JSON (default stdout)");

  std::string alg;
  bool refine = false, emit_lengths = false, emit_cycles = false, no_filter = false;
  std::optional<double> alpha, gamma;
  std::optional<int> r_min, threshold, mis_threshold;
  std::optional<std::string> variant;
  bool use_mis = false;
  std::string classify_config;
  auto* classify = app.add_subcommand("classify", "run one classifier on a graph");
  classify->add_option("-g,--graph", graph_path, "graph file")->required()->check(CLI::ExistingFile);
  classify->add_option("--alg", alg, "mdsbr or ecbr")->required()->check(CLI::IsMember({"mdsbr", "ecbr"}));
  classify->add_option("--config", classify_config, "config file providing algorithm parameters")->check(CLI::ExistingFile);
  classify->add_flag("--refine", refine, "apply the refinement pass");
  classify->add_option("--alpha", alpha, "MDS-BR opening-angle threshold in degrees");
  classify->add_option("--r-min", r_min, "MDS-BR refinement path length");
  classify->add_option("--variant", variant, "MDS-BR embedding: mds, mds3, ssmds, opt");
  classify->add_flag("--no-filter", no_filter, "disable the micro-hole cone filter");
  classify->add_option("--threshold", threshold, "EC-BR circle threshold");
  classify->add_option("--gamma", gamma, "EC-BR refinement fraction");
  classify->add_flag("--mis", use_mis, "EC-BR on the MIS representative graph");
  classify->add_option("--mis-threshold", mis_threshold, "threshold on representative-graph circles");
  classify->add_flag("--emit-lengths", emit_lengths, "include per-node circle lengths (ecbr)");
  classify->add_flag("--emit-cycles", emit_cycles, "include extracted boundary cycles (ecbr)");
  classify->add_option("-o,--out", out_path, "output JSON (default stdout)");

  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> base_seed;
  std::optional<unsigned> threads;
  std::string csv_path, json_path;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "run an experiment batch and write CSV/JSON reports");
  add_network_flags(evaluate_cmd, net);
  evaluate_cmd->add_option("--trials", trials, "number of trials");
  evaluate_cmd->add_option("--base-seed", base_seed, "first trial seed");
  evaluate_cmd->add_option("--threads", threads, "worker threads (default: BDR_THREADS or all cores)");
  evaluate_cmd->add_option("--csv", csv_path, "CSV output (default: output.csv_path or stdout)");
  evaluate_cmd->add_option("--json", json_path, "JSON report output");

  std::string verdict_path, truth_path;
  bool no_edges = false;
  auto* render = app.add_subcommand("render", "draw a graph colored by verdicts or ground truth as SVG");
  render->add_option("-g,--graph", graph_path, "graph file")->required()->check(CLI::ExistingFile);
  auto* vopt = render->add_option("--verdicts", verdict_path, "verdict JSON from classify")->check(CLI::ExistingFile);
  render->add_option("--truth", truth_path, "ground-truth JSON (computed when neither input is given)")
      ->check(CLI::ExistingFile)
      ->excludes(vopt);
  render->add_flag("--no-edges", no_edges, "omit the link layer");
  render->add_option("-o,--out", out_path, "SVG output (default stdout)");

  auto* hist = app.add_subcommand("hist", "histogram of per-node maximum circle lengths");
  hist->add_option("-g,--graph", graph_path, "graph file (otherwise generated from the network flags)")
      ->check(CLI::ExistingFile);
  add_network_flags(hist, net);
  hist->add_option("-o,--out", out_path, "output JSON (default stdout)");

  std::size_t layouts = 10;
  auto* calibrate = app.add_subcommand("calibrate", "choose the MIS-reduction threshold by histogram valley");
  add_network_flags(calibrate, net);
  calibrate->add_option("--layouts", layouts, "number of generated layouts");
  calibrate->add_option("-o,--out", out_path, "output JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      const CliConfig c = resolve(net);
      const ConnectivityGraph g = generate_network(c.network);
      save_graph(out_path, g);
      std::printf("nodes %zu\nedges %zu\nd_avg %.4f\n", g.size(), g.edge_count(), g.average_degree());
    } else if (*truth) {
      const ConnectivityGraph g = load_graph(graph_path);
      write_text(out_path, ground_truth_to_json(compute_ground_truth(g, h_min)).dump(1) + "\n");
    } else if (*classify) {
      Overrides o;
      o.config_path = classify_config;
      const CliConfig c = resolve(o);
      AlgorithmSpec spec;
      spec.kind = alg == "ecbr" ? AlgorithmKind::EcBr : AlgorithmKind::MdsBr;
      spec.refined = refine;
      spec.mdsbr = c.mdsbr;
      spec.ecbr = c.ecbr;
      if (alpha) spec.mdsbr.alpha_min = *alpha;
      if (r_min) spec.mdsbr.r_min = *r_min;
      if (variant) spec.mdsbr.variant = parse_variant(*variant);
      if (no_filter) spec.mdsbr.micro_hole_filter = false;
      if (threshold) spec.ecbr.circle_threshold = *threshold;
      if (gamma) spec.ecbr.gamma = *gamma;
      if (use_mis) spec.ecbr.use_mis_reduction = true;
      if (mis_threshold) spec.ecbr.mis_threshold = *mis_threshold;
      spec.mdsbr.validate();
      spec.ecbr.validate();

      const ConnectivityGraph g = load_graph(graph_path);
      std::vector<int> lengths;
      const Classification cls = classify_network(g, spec, &lengths);
      json doc;
      doc["algorithm"] = spec.label();
      doc["verdicts"] = verdicts_to_json(cls);
      if (emit_lengths && spec.kind == AlgorithmKind::EcBr) {
        json l = json::object();
        for (NodeId u = 0; u < lengths.size(); ++u) l[std::to_string(u)] = lengths[u];
        doc["circle_lengths"] = l;
      }
      if (emit_cycles && spec.kind == AlgorithmKind::EcBr) {
        Classification base(g.size());
        for (NodeId u = 0; u < g.size(); ++u) base[u] = ecbr_verdict(lengths[u], spec.ecbr);
        doc["cycles"] = boundary_cycles(g, boundary_nodes(base), spec.ecbr.circle_threshold);
      }
      write_text(out_path, doc.dump(1) + "\n");
    } else if (*evaluate_cmd) {
      CliConfig c = resolve(net);
      ExperimentConfig e = c.experiment;
      if (trials) e.trials = *trials;
      if (base_seed) e.base_seed = *base_seed;
      if (threads) e.threads = *threads;
      if (e.trials < 1) throw ConfigError("--trials must be >= 1");
      const auto reports = run_experiment(e);
      std::ostringstream csv;
      write_csv(csv, reports);
      const std::string csv_out = !csv_path.empty() ? csv_path : c.output.csv_path;
      write_text(csv_out, csv.str());
      const std::string json_out = !json_path.empty() ? json_path : c.output.json_path;
      if (!json_out.empty()) write_text(json_out, report_to_json(reports).dump(1) + "\n");
      if (!csv_out.empty() && csv_out != "-")
        for (const auto& r : reports) {
          auto show = [](const std::optional<double>& v) { return v ? std::to_string(*v) : std::string("n/a"); };
          std::printf("%-16s mandatory_fn %s  optional_interior %s  interior_fp %s\n", r.spec.label().c_str(),
                      show(r.mandatory_fn_pct).c_str(), show(r.optional_interior_pct).c_str(),
                      show(r.interior_fp_pct).c_str());
        }
    } else if (*render) {
      const ConnectivityGraph g = load_graph(graph_path);
      std::vector<std::string> classes(g.size(), "interior");
      if (!verdict_path.empty()) {
        const json doc = read_json(verdict_path);
        const json& v = doc.contains("verdicts") ? doc.at("verdicts") : doc;
        for (const auto& [key, value] : v.items()) {
          const std::size_t id = std::stoul(key);
          if (id >= g.size()) throw ConfigError("verdict for unknown node " + key);
          classes[id] = value.get<std::string>();
        }
      } else {
        const GroundTruth gt =
            truth_path.empty() ? compute_ground_truth(g) : ground_truth_from_json(read_json(truth_path));
        if (gt.labels.size() != g.size()) throw ConfigError("ground truth does not match the graph");
        for (NodeId u = 0; u < g.size(); ++u) classes[u] = std::string(to_string(gt.labels[u]));
      }
      SvgStyle style;
      style.draw_edges = !no_edges;
      write_text(out_path, render_svg(g, classes, style));
    } else if (*hist) {
      const ConnectivityGraph g = graph_path.empty() ? generate_network(resolve(net).network) : load_graph(graph_path);
      json doc = json::object();
      for (const auto& [len, count] : circle_length_histogram(g)) doc[std::to_string(len)] = count;
      write_text(out_path, doc.dump(1) + "\n");
    } else if (*calibrate) {
      const CliConfig c = resolve(net);
      const MisCalibration cal = calibrate_mis_threshold(c.network, layouts, c.network.seed, c.experiment.h_min);
      json doc;
      doc["mis_threshold"] = cal.threshold;
      doc["balanced_error"] = cal.balanced_error;
      doc["layouts"] = layouts;
      json a = json::object(), b = json::object();
      for (const auto& [len, count] : cal.interior_lengths) a[std::to_string(len)] = count;
      for (const auto& [len, count] : cal.mandatory_lengths) b[std::to_string(len)] = count;
      doc["interior_lengths"] = a;
      doc["mandatory_lengths"] = b;
      write_text(out_path, doc.dump(1) + "\n");
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
