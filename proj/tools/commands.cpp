#include "commands.hpp"

#include <cstdio>
#include <sstream>

#include "macamp/io.hpp"
#include "macamp/monte_carlo.hpp"
#include "macamp/tradeoff_n_user.hpp"
#include "macamp/tradeoff_two_user.hpp"
#include "macamp/verify.hpp"
#include "macamp/weighted_sum.hpp"

namespace macamp::cli {

namespace {

std::size_t grid_param(const nlohmann::json& p, std::size_t fallback) {
  const long long grid = p.value("grid", static_cast<long long>(fallback));
  if (grid < 2) throw io::ConfigError("grid must be ≥ 2");
  return static_cast<std::size_t>(grid);
}

std::vector<std::size_t> zero_based(const std::vector<std::size_t>& one_based) {
  std::vector<std::size_t> out;
  for (auto u : one_based) {
    if (u == 0) throw io::ConfigError("user indices are 1-based");
    out.push_back(u - 1);
  }
  return out;
}

std::string verify_table(const std::vector<verify::CheckResult>& results, bool& all_passed) {
  std::ostringstream os;
  all_passed = true;
  char line[512];
  std::snprintf(line, sizeof line, "%-6s %-56s %8s %14s %12s  %s\n", "status", "check", "trials",
                "worst", "tolerance", "detail");
  os << line;
  for (const auto& r : results) {
    all_passed = all_passed && r.passed;
    std::snprintf(line, sizeof line, "%-6s %-56s %8zu %14.6g %12.3g  %s\n",
                  r.passed ? "PASS" : "FAIL", r.name.c_str(), r.trials, r.worst, r.tolerance,
                  r.detail.c_str());
    os << line;
  }
  os << (all_passed ? "all checks passed\n" : "verification FAILED\n");
  return os.str();
}

}  // namespace

CommandOutput run_command(const std::string& command, const ChannelConfig& config,
                          const nlohmann::json& p) {
  if (command == "region2") {
    return {io::surface_csv(surface_samples(config, grid_param(p, 64)))};
  }
  if (command == "xsec") {
    const auto section =
        cross_section(config, p.at("distortion").get<double>(), grid_param(p, 512));
    return {io::polyline_csv(section.polygon())};
  }
  if (command == "optimize") {
    WeightVector w{p.at("mus").get<std::vector<double>>(), p.at("lambda").get<double>()};
    if (w.mus.size() != config.n_users()) {
      throw io::ConfigError("--mus needs one weight per user (" +
                            std::to_string(config.n_users()) + ")");
    }
    const auto report = converse_bound(config, w);
    nlohmann::json j = io::to_json(report);
    const long long oracle_res = p.value("oracle_res", 0LL);
    if (oracle_res > 0) {
      const auto oracle = grid_oracle(config, w, static_cast<std::size_t>(oracle_res));
      j["oracle"] = {{"resolution", oracle_res},
                     {"value", oracle.value},
                     {"split", oracle.split.gammas},
                     {"gap", report.value - oracle.value}};
    }
    return {j.dump(2) + "\n"};
  }
  if (command == "simulate") {
    const PowerSplit split{p.at("split").get<std::vector<double>>()};
    const auto n = p.at("n").get<std::size_t>();
    const auto seed = p.at("seed").get<std::uint64_t>();
    const std::string mode = p.value("mode", std::string("distortion"));
    SimulationReport report;
    if (mode == "distortion") {
      report = simulate_distortion(config, split, n, seed);
    } else if (mode == "dpc-rate") {
      const auto order = zero_based(p.value("order", std::vector<std::size_t>{1, 2}));
      report = estimate_dpc_rate(config, split, order, n, seed);
    } else {
      throw io::ConfigError("unknown simulation mode '" + mode + "'");
    }
    return {io::to_json(report).dump(2) + "\n"};
  }
  if (command == "vertices") {
    const PowerSplit split{p.at("split").get<std::vector<double>>()};
    return {io::vertices_csv(config, split, polymatroid_vertices(config, split))};
  }
  if (command == "verify") {
    const std::string suite = p.value("suite", std::string("quick"));
    verify::SuiteLevel level;
    if (suite == "quick" || suite == "default") {
      level = verify::SuiteLevel::kQuick;
    } else if (suite == "full") {
      level = verify::SuiteLevel::kFull;
    } else {
      throw io::ConfigError("unknown suite '" + suite + "' (quick, full)");
    }
    bool ok = true;
    auto body = verify_table(
        verify::run_suite(config, level, p.value("seed", std::uint64_t{20240617})), ok);
    return {std::move(body), ok ? kOk : kVerificationFailed};
  }
  throw io::ConfigError("unknown command '" + command + "'");
}

}  // namespace macamp::cli
