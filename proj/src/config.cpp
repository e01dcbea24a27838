#include "bdr/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "bdr/error.hpp"

namespace bdr {

namespace {

using nlohmann::json;

// Checks one JSON object against its allowed keys and reads typed fields.
class Section {
 public:
  Section(const json& doc, std::string path, std::initializer_list<const char*> keys) : doc_(doc), path_(std::move(path)) {
    if (!doc_.is_object()) fail(path_, "expected an object");
    for (const auto& [key, value] : doc_.items())
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; }))
        fail(where(key), "unknown key");
  }

  bool has(const char* key) const { return doc_.contains(key); }
  const json& raw(const char* key) const { return doc_.at(key); }
  std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void number(const char* key, double& out) const {
    if (!has(key)) return;
    if (!raw(key).is_number()) fail(where(key), "expected a number");
    out = raw(key).get<double>();
  }
  template <typename Int>
  void integer(const char* key, Int& out) const {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_number_integer() || (std::is_unsigned_v<Int> && v.get<long long>() < 0 && !v.is_number_unsigned()))
      fail(where(key), "expected a nonnegative integer");
    out = v.get<Int>();
  }
  void boolean(const char* key, bool& out) const {
    if (!has(key)) return;
    if (!raw(key).is_boolean()) fail(where(key), "expected true or false");
    out = raw(key).get<bool>();
  }
  void string(const char* key, std::string& out) const {
    if (!has(key)) return;
    if (!raw(key).is_string()) fail(where(key), "expected a string");
    out = raw(key).get<std::string>();
  }

  [[noreturn]] static void fail(const std::string& field, const std::string& what) {
    throw ConfigError("config field '" + field + "': " + what);
  }

 private:
  const json& doc_;
  std::string path_;
};

Polygon parse_polygon(const json& doc, const std::string& path) {
  if (!doc.is_array()) Section::fail(path, "expected an array of [x, y] points");
  Polygon poly;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& p = doc[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      Section::fail(path + "[" + std::to_string(i) + "]", "expected [x, y]");
    poly.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return poly;
}

void parse_network(const json& doc, CliConfig& c) {
  const Section s(doc, "network",
                  {"area_width", "area_height", "placement", "comm_model", "target_avg_degree", "hole_preset", "holes", "seed"});
  NetworkConfig& n = c.network;
  s.number("area_width", n.area_width);
  s.number("area_height", n.area_height);
  s.number("target_avg_degree", n.target_avg_degree);
  s.integer("seed", n.seed);
  s.string("hole_preset", c.hole_preset);

  if (s.has("comm_model")) {
    const Section m(s.raw("comm_model"), "network.comm_model", {"kind", "d"});
    std::string kind = "udg";
    m.string("kind", kind);
    if (kind == "udg") {
      if (m.has("d")) Section::fail("network.comm_model.d", "only valid for qudg");
      n.comm_model = UnitDisk{};
    } else if (kind == "qudg") {
      QuasiUnitDisk q;
      m.number("d", q.d);
      n.comm_model = q;
    } else {
      Section::fail("network.comm_model.kind", "expected udg or qudg");
    }
  }

  n.placement = PerturbedGrid{spacing_for_degree(n.target_avg_degree, n.comm_model)};
  if (s.has("placement")) {
    const Section p(s.raw("placement"), "network.placement", {"kind", "spacing", "target_degree"});
    std::string kind = "perturbed_grid";
    p.string("kind", kind);
    if (kind == "perturbed_grid") {
      double spacing = spacing_for_degree(n.target_avg_degree, n.comm_model);
      if (p.has("target_degree")) {
        double d = 0;
        p.number("target_degree", d);
        if (!(d > 0)) Section::fail("network.placement.target_degree", "must be > 0");
        spacing = spacing_for_degree(d, n.comm_model);
      }
      p.number("spacing", spacing);
      n.placement = PerturbedGrid{spacing};
    } else if (kind == "random") {
      if (p.has("spacing")) Section::fail("network.placement.spacing", "only valid for perturbed_grid");
      n.placement = RandomPlacement{};
      if (p.has("target_degree")) p.number("target_degree", n.target_avg_degree);
    } else {
      Section::fail("network.placement.kind", "expected perturbed_grid or random");
    }
  }
  try {
    n.hole_mask = hole_preset(c.hole_preset, n.area_width, n.area_height);
  } catch (const ConfigError& e) {
    Section::fail("network.hole_preset", e.what());
  }
  if (s.has("holes")) {
    const json& holes = s.raw("holes");
    if (!holes.is_array()) Section::fail("network.holes", "expected an array of polygons");
    for (std::size_t i = 0; i < holes.size(); ++i)
      n.hole_mask.push_back(parse_polygon(holes[i], "network.holes[" + std::to_string(i) + "]"));
  }
}

void parse_mdsbr(const json& doc, const std::string& path, MdsBrParams& p) {
  const Section s(doc, path, {"alpha_min", "r_min", "variant", "micro_hole_filter"});
  s.number("alpha_min", p.alpha_min);
  s.integer("r_min", p.r_min);
  s.boolean("micro_hole_filter", p.micro_hole_filter);
  if (s.has("variant")) {
    std::string v;
    s.string("variant", v);
    try {
      p.variant = parse_variant(v);
    } catch (const ConfigError& e) {
      Section::fail(path + ".variant", e.what());
    }
  }
  try {
    p.validate();
  } catch (const ConfigError& e) {
    Section::fail(path, e.what());
  }
}

void parse_ecbr(const json& doc, const std::string& path, EcBrParams& p) {
  const Section s(doc, path, {"circle_threshold", "gamma", "use_mis_reduction", "mis_threshold"});
  s.integer("circle_threshold", p.circle_threshold);
  s.number("gamma", p.gamma);
  s.boolean("use_mis_reduction", p.use_mis_reduction);
  s.integer("mis_threshold", p.mis_threshold);
  try {
    p.validate();
  } catch (const ConfigError& e) {
    Section::fail(path, e.what());
  }
}

AlgorithmSpec parse_algorithm(const json& doc, const std::string& path, const CliConfig& c) {
  if (doc.is_string()) {
    // Shorthand: "ecbr", "ecbr+ref", "mdsbr", "mdsbr+ref".
    const std::string name = doc.get<std::string>();
    AlgorithmSpec spec;
    spec.mdsbr = c.mdsbr;
    spec.ecbr = c.ecbr;
    const std::string base = name.ends_with("+ref") ? name.substr(0, name.size() - 4) : name;
    spec.refined = base.size() != name.size();
    if (base == "ecbr") spec.kind = AlgorithmKind::EcBr;
    else if (base == "mdsbr") spec.kind = AlgorithmKind::MdsBr;
    else Section::fail(path, "unknown algorithm '" + name + "'");
    return spec;
  }
  const Section s(doc, path, {"kind", "refined", "name", "mdsbr", "ecbr"});
  AlgorithmSpec spec;
  spec.mdsbr = c.mdsbr;
  spec.ecbr = c.ecbr;
  std::string kind;
  s.string("kind", kind);
  if (kind == "ecbr") spec.kind = AlgorithmKind::EcBr;
  else if (kind == "mdsbr") spec.kind = AlgorithmKind::MdsBr;
  else Section::fail(path + ".kind", "expected ecbr or mdsbr");
  s.boolean("refined", spec.refined);
  s.string("name", spec.name);
  if (s.has("mdsbr")) parse_mdsbr(s.raw("mdsbr"), path + ".mdsbr", spec.mdsbr);
  if (s.has("ecbr")) parse_ecbr(s.raw("ecbr"), path + ".ecbr", spec.ecbr);
  return spec;
}

}  // namespace

std::vector<AlgorithmSpec> default_algorithms(const MdsBrParams& mdsbr, const EcBrParams& ecbr) {
  std::vector<AlgorithmSpec> out;
  for (AlgorithmKind kind : {AlgorithmKind::EcBr, AlgorithmKind::MdsBr})
    for (bool refined : {false, true}) {
      AlgorithmSpec spec;
      spec.kind = kind;
      spec.refined = refined;
      spec.mdsbr = mdsbr;
      spec.ecbr = ecbr;
      out.push_back(spec);
    }
  return out;
}

CliConfig parse_config(const json& doc) {
  CliConfig c;
  const Section top(doc, "", {"network", "mdsbr", "ecbr", "experiment", "output"});
  if (top.has("network")) parse_network(top.raw("network"), c);
  // Unreliable links leave more gaps among boundary neighbors; relax the
  // refinement fraction unless the config sets one.
  if (std::holds_alternative<QuasiUnitDisk>(c.network.comm_model)) c.ecbr.gamma = 0.7;
  if (top.has("mdsbr")) parse_mdsbr(top.raw("mdsbr"), "mdsbr", c.mdsbr);
  if (top.has("ecbr")) parse_ecbr(top.raw("ecbr"), "ecbr", c.ecbr);

  ExperimentConfig& e = c.experiment;
  if (top.has("experiment")) {
    const Section s(top.raw("experiment"), "experiment", {"trials", "base_seed", "h_min", "threads", "algorithms"});
    s.integer("trials", e.trials);
    s.integer("base_seed", e.base_seed);
    s.number("h_min", e.h_min);
    s.integer("threads", e.threads);
    if (e.trials < 1) Section::fail("experiment.trials", "must be >= 1");
    if (!(e.h_min > 0)) Section::fail("experiment.h_min", "must be > 0");
    if (s.has("algorithms")) {
      const json& algs = s.raw("algorithms");
      if (!algs.is_array()) Section::fail("experiment.algorithms", "expected an array");
      for (std::size_t i = 0; i < algs.size(); ++i)
        e.algorithms.push_back(parse_algorithm(algs[i], "experiment.algorithms[" + std::to_string(i) + "]", c));
    }
  }
  if (e.algorithms.empty()) e.algorithms = default_algorithms(c.mdsbr, c.ecbr);

  if (top.has("output")) {
    const Section s(top.raw("output"), "output", {"csv_path", "json_path", "svg_path"});
    s.string("csv_path", c.output.csv_path);
    s.string("json_path", c.output.json_path);
    s.string("svg_path", c.output.svg_path);
  }

  try {
    validate(c.network);
  } catch (const ConfigError& err) {
    Section::fail("network", err.what());
  }
  e.network = c.network;
  return c;
}

CliConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& err) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + err.what());
  }
  return parse_config(doc);
}

nlohmann::json config_to_json(const CliConfig& c) {
  json net;
  net["area_width"] = c.network.area_width;
  net["area_height"] = c.network.area_height;
  net["target_avg_degree"] = c.network.target_avg_degree;
  net["seed"] = c.network.seed;
  net["hole_preset"] = c.hole_preset;
  if (const auto* grid = std::get_if<PerturbedGrid>(&c.network.placement))
    net["placement"] = {{"kind", "perturbed_grid"}, {"spacing", grid->spacing}};
  else
    net["placement"] = {{"kind", "random"}};
  if (const auto* q = std::get_if<QuasiUnitDisk>(&c.network.comm_model))
    net["comm_model"] = {{"kind", "qudg"}, {"d", q->d}};
  else
    net["comm_model"] = {{"kind", "udg"}};
  json doc;
  doc["network"] = net;
  doc["mdsbr"] = {{"alpha_min", c.mdsbr.alpha_min},
                  {"r_min", c.mdsbr.r_min},
                  {"variant", std::string(to_string(c.mdsbr.variant))},
                  {"micro_hole_filter", c.mdsbr.micro_hole_filter}};
  doc["ecbr"] = {{"circle_threshold", c.ecbr.circle_threshold},
                 {"gamma", c.ecbr.gamma},
                 {"use_mis_reduction", c.ecbr.use_mis_reduction},
                 {"mis_threshold", c.ecbr.mis_threshold}};
  doc["experiment"] = {{"trials", c.experiment.trials}, {"base_seed", c.experiment.base_seed}, {"h_min", c.experiment.h_min}};
  return doc;
}

}  // namespace bdr
