#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "macamp/channel_model.hpp"
#include "macamp/monte_carlo.hpp"
#include "macamp/tradeoff_n_user.hpp"
#include "macamp/tradeoff_two_user.hpp"
#include "macamp/weighted_sum.hpp"

namespace macamp::io {

inline constexpr const char* kToolVersion = "0.3.0";

// Config or usage problem; `what()` already carries file/line context.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses a config document:
//   users: [{power: 2}, {power: 2}]
//   state_var: 1
//   noise_var: 1
//   state_coupling: 1   # optional, default 1
// YAML syntax, so JSON documents are accepted too. `origin` prefixes messages.
ChannelConfig parse_config(const std::string& text, const std::string& origin = "<config>");
ChannelConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const ChannelConfig& config);
ChannelConfig config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const OptimumReport& report);
nlohmann::json to_json(const SimulationReport& report);

// Numbers as %.12g with '.' separator.
std::string format_number(double v);

std::string surface_csv(const RegionSample& samples);
std::string polyline_csv(const std::vector<RatePair>& points);
std::string vertices_csv(const ChannelConfig& config, const PowerSplit& split,
                         const std::vector<PolymatroidVertex>& vertices);

// Writes via a temporary sibling and rename.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

// Everything needed to regenerate an output: command, resolved config,
// parameters, version and creation time.
struct RunManifest {
  std::string command;
  ChannelConfig config;
  nlohmann::json parameters = nlohmann::json::object();
  std::string tool_version = kToolVersion;
  std::string timestamp;
  std::string output;
};

nlohmann::json to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const nlohmann::json& j);
std::filesystem::path manifest_path_for(const std::filesystem::path& output);
std::string utc_timestamp();

}  // namespace macamp::io
