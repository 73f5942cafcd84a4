#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "relaxlab/harness/setup.hpp"

namespace relaxlab::cli {

/// A validated run: the experiment plus where its results go.
struct RunConfig {
  harness::ExperimentSpec spec;
  std::string output = "runs";
};

/// Validates a JSON tree and fills defaults. Unknown keys and constraint
/// violations throw ConfigError naming the offending path.
RunConfig parse_config(const nlohmann::json& tree);
RunConfig parse_config_file(const std::string& path);

/// Full tree with every default spelled out; parse_config(serialize_config(c)) == c.
nlohmann::json serialize_config(const RunConfig& config);

/// 16 hex digits of FNV-1a over the canonical (sorted-key) dump of the
/// serialized config, output directory and job count excluded.
std::string config_hash(const RunConfig& config);

std::vector<std::string> preset_names();
/// Raw preset tree; throws std::invalid_argument for unknown names.
nlohmann::json preset(const std::string& name);

}  // namespace relaxlab::cli
