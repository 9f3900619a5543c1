#include "macamp/io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace macamp::io {

namespace {

std::string where(const std::string& origin, const YAML::Mark& mark) {
  if (mark.line < 0) return origin;
  return origin + ":" + std::to_string(mark.line + 1) + ":" + std::to_string(mark.column + 1);
}

double read_number(const YAML::Node& node, const std::string& key, const std::string& origin) {
  if (!node.IsScalar()) {
    throw ConfigError(where(origin, node.Mark()) + ": '" + key + "' must be a number");
  }
  try {
    return node.as<double>();
  } catch (const YAML::Exception&) {
    throw ConfigError(where(origin, node.Mark()) + ": '" + key + "' must be a number, got '" +
                      node.Scalar() + "'");
  }
}

}  // namespace

ChannelConfig parse_config(const std::string& text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(where(origin, e.mark) + ": " + e.msg);
  }
  if (!root.IsMap()) throw ConfigError(origin + ": config must be a mapping");

  ChannelConfig config;
  bool have_users = false;
  bool have_state = false;
  bool have_noise = false;
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    const YAML::Node& value = kv.second;
    if (key == "users") {
      if (!value.IsSequence()) {
        throw ConfigError(where(origin, value.Mark()) + ": 'users' must be a list");
      }
      for (const auto& user : value) {
        if (!user.IsMap() || !user["power"]) {
          throw ConfigError(where(origin, user.Mark()) + ": each user needs a 'power' entry");
        }
        for (const auto& field : user) {
          if (field.first.as<std::string>() != "power") {
            throw ConfigError(where(origin, field.first.Mark()) + ": unknown user key '" +
                              field.first.as<std::string>() + "'");
          }
        }
        config.powers.push_back(read_number(user["power"], "power", origin));
      }
      have_users = true;
    } else if (key == "state_var") {
      config.state_var = read_number(value, key, origin);
      have_state = true;
    } else if (key == "noise_var") {
      config.noise_var = read_number(value, key, origin);
      have_noise = true;
    } else if (key == "state_coupling") {
      config.state_coupling = read_number(value, key, origin);
    } else {
      throw ConfigError(where(origin, kv.first.Mark()) + ": unknown key '" + key + "'");
    }
  }
  if (!have_users) throw ConfigError(origin + ": missing 'users'");
  if (!have_state) throw ConfigError(origin + ": missing 'state_var'");
  if (!have_noise) throw ConfigError(origin + ": missing 'noise_var'");
  try {
    validate(config);
  } catch (const InvalidArgument& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return config;
}

ChannelConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string());
}

nlohmann::json to_json(const ChannelConfig& config) {
  nlohmann::json users = nlohmann::json::array();
  for (double p : config.powers) users.push_back({{"power", p}});
  return {{"users", users},
          {"state_var", config.state_var},
          {"noise_var", config.noise_var},
          {"state_coupling", config.state_coupling}};
}

ChannelConfig config_from_json(const nlohmann::json& j) {
  ChannelConfig config;
  for (const auto& u : j.at("users")) config.powers.push_back(u.at("power").get<double>());
  config.state_var = j.at("state_var").get<double>();
  config.noise_var = j.at("noise_var").get<double>();
  config.state_coupling = j.value("state_coupling", 1.0);
  validate(config);
  return config;
}

nlohmann::json to_json(const OptimumReport& r) {
  std::vector<std::size_t> order;
  for (auto u : r.decoding_order) order.push_back(u + 1);
  nlohmann::json j = {{"value", r.value},
                      {"normalized_value", r.normalized_value},
                      {"split", r.split.gammas},
                      {"regime", std::string(regime_name(r.regime.tag))},
                      {"distortion", r.distortion},
                      {"decoding_order", order},
                      {"rates", r.rates},
                      {"rate_split_unique", r.rate_split_unique},
                      {"sweeps", r.sweeps},
                      {"corner", r.corner}};
  if (r.regime.tag == Regime::Tag::kCase3) j["pivot"] = r.regime.pivot;
  return j;
}

nlohmann::json to_json(const SimulationReport& r) {
  auto est = [](const Estimate& e) { return nlohmann::json{{"mean", e.mean}, {"se", e.se}}; };
  nlohmann::json j = {{"kind", r.kind},   {"n", r.n},
                      {"seed", r.seed},   {"generator", r.generator},
                      {"split", r.split.gammas}, {"mmse_coeff", r.mmse_coeff}};
  if (r.kind == "distortion") {
    j["empirical_distortion"] = r.distortion.mean;
    j["distortion_se"] = r.distortion.se;
    j["distortion_target"] = r.distortion_target;
    j["empirical_powers"] = r.empirical_powers;
    j["power_budgets"] = r.power_budgets;
    j["power_audit"] = power_audit(r) ? "pass" : "fail";
    j["moments"] = {{"var_s", est(r.var_s)}, {"var_y", est(r.var_y)}, {"cov_sy", est(r.cov_sy)}};
  } else {
    std::vector<std::size_t> order;
    for (auto u : r.decoding_order) order.push_back(u + 1);
    j["decoding_order"] = order;
    nlohmann::json rates = nlohmann::json::array();
    for (const auto& rate : r.rates) {
      rates.push_back({{"estimate", rate.estimate.mean},
                       {"se", rate.estimate.se},
                       {"closed_form", rate.target},
                       {"exact", rate.exact}});
    }
    j["rate_estimates"] = rates;
    j["conditioning"] = r.conditioning;
  }
  return j;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string surface_csv(const RegionSample& samples) {
  std::string out = "gamma,beta,r1,r2,log2QoverD,tag\n";
  out.reserve(samples.size() * 72);
  for (const auto& s : samples) {
    out += format_number(s.gamma) + ',' + format_number(s.beta) + ',' +
           format_number(s.point.rates[0]) + ',' + format_number(s.point.rates[1]) + ',' +
           format_number(s.log2_q_over_d) + ',' + std::string(tag_name(s.tag)) + '\n';
  }
  return out;
}

std::string polyline_csv(const std::vector<RatePair>& points) {
  std::string out = "r1,r2\n";
  for (const auto& p : points) out += format_number(p.r1) + ',' + format_number(p.r2) + '\n';
  return out;
}

std::string vertices_csv(const ChannelConfig& config, const PowerSplit& split,
                         const std::vector<PolymatroidVertex>& vertices) {
  const std::size_t n = config.n_users();
  std::string out = "permutation";
  for (std::size_t i = 0; i < n; ++i) out += ",r" + std::to_string(i + 1);
  out += ",distortion\n";
  const std::string d = format_number(distortion_bound_n(config, split));
  for (const auto& v : vertices) {
    std::string perm;
    for (std::size_t k = 0; k < v.permutation.size(); ++k) {
      perm += (k ? "-" : "") + std::to_string(v.permutation[k] + 1);
    }
    out += perm;
    for (double r : v.rates) out += ',' + format_number(r);
    out += ',' + d + '\n';
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
    out << contents;
    if (!out) throw ConfigError("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

nlohmann::json to_json(const RunManifest& m) {
  return {{"command", m.command},       {"config", to_json(m.config)},
          {"parameters", m.parameters}, {"tool_version", m.tool_version},
          {"timestamp", m.timestamp},   {"output", m.output}};
}

RunManifest manifest_from_json(const nlohmann::json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.config = config_from_json(j.at("config"));
  m.parameters = j.at("parameters");
  m.tool_version = j.value("tool_version", std::string{});
  m.timestamp = j.value("timestamp", std::string{});
  m.output = j.value("output", std::string{});
  return m;
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
  auto p = output;
  p += ".manifest.json";
  return p;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace macamp::io
