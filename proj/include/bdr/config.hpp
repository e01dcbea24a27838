#pragma once

#include <string>

#include <json.hpp>

#include "bdr/harness.hpp"

namespace bdr {

struct OutputPaths {
  std::string csv_path;
  std::string json_path;
  std::string svg_path;
};

// Parsed run configuration: network, default algorithm parameters, the
// experiment section and output paths.
struct CliConfig {
  NetworkConfig network;
  std::string hole_preset = "none";
  MdsBrParams mdsbr;
  EcBrParams ecbr;
  ExperimentConfig experiment;  // network copied in at resolve time
  OutputPaths output;
};

// Strict parse: unknown keys and wrongly typed values raise ConfigError
// naming the offending field.
CliConfig parse_config(const nlohmann::json& doc);
CliConfig load_config(const std::string& path);

// Algorithms named by the experiment section, or the four standard variants
// (ecbr, ecbr+ref, mdsbr, mdsbr+ref) when none are listed.
std::vector<AlgorithmSpec> default_algorithms(const MdsBrParams& mdsbr, const EcBrParams& ecbr);

nlohmann::json config_to_json(const CliConfig& config);

}  // namespace bdr
