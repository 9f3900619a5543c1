#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "macamp/io.hpp"
#include "macamp/tradeoff_two_user.hpp"
#include "macamp/weighted_sum.hpp"

namespace {

using macamp::cli::ExitCode;

struct Invocation {
  std::string command;
  std::string config_path;
  std::string out;
  nlohmann::json parameters = nlohmann::json::object();
};

int emit(const macamp::cli::CommandOutput& result, const std::string& command,
         const macamp::ChannelConfig& config, const nlohmann::json& parameters,
         const std::string& out) {
  if (out.empty()) {
    std::cout << result.body;
    return result.exit_code;
  }
  macamp::io::write_atomic(out, result.body);
  macamp::io::RunManifest manifest{command,
                                   config,
                                   parameters,
                                   macamp::io::kToolVersion,
                                   macamp::io::utc_timestamp(),
                                   std::filesystem::path(out).filename().string()};
  macamp::io::write_atomic(macamp::io::manifest_path_for(out),
                           macamp::io::to_json(manifest).dump(2) + "\n");
  std::cerr << "wrote " << out << "\n";
  return result.exit_code;
}

int rerun(const std::string& manifest_path, const std::string& out) {
  std::ifstream in(manifest_path);
  if (!in) throw macamp::io::ConfigError("cannot read manifest '" + manifest_path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw macamp::io::ConfigError(manifest_path + ": " + e.what());
  }
  const auto manifest = macamp::io::manifest_from_json(j);
  if (!manifest.tool_version.empty() && manifest.tool_version != macamp::io::kToolVersion) {
    std::cerr << "warning: manifest written by version " << manifest.tool_version
              << ", running " << macamp::io::kToolVersion << "\n";
  }
  const auto result =
      macamp::cli::run_command(manifest.command, manifest.config, manifest.parameters);
  return emit(result, manifest.command, manifest.config, manifest.parameters, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate/state-estimation tradeoffs for the Gaussian MAC with state"};
  app.set_version_flag("--version", std::string(macamp::io::kToolVersion));
  app.require_subcommand(1);

  Invocation inv;
  std::size_t grid = 0;
  double distortion = 0.0;
  std::vector<double> mus;
  std::vector<double> split;
  std::vector<std::size_t> order;
  double lambda = 0.0;
  std::size_t oracle_res = 0;
  std::size_t n = 0;
  std::uint64_t seed = 1;
  std::string mode = "distortion";
  std::string suite = "quick";
  std::string manifest_path;

  auto* region2 = app.add_subcommand("region2", "sample the two-user tradeoff surface");
  region2->add_option("config", inv.config_path, "YAML channel config")->required();
  region2->add_option("--grid", grid, "samples per gamma/beta axis")->default_val(64);
  region2->add_option("--out", inv.out, "CSV output path")->required();

  auto* xsec = app.add_subcommand("xsec", "rate region at a fixed distortion");
  xsec->add_option("config", inv.config_path, "YAML channel config")->required();
  xsec->add_option("--distortion", distortion, "target distortion D")->required();
  xsec->add_option("--grid", grid, "frontier resolution")->default_val(512);
  xsec->add_option("--out", inv.out, "CSV output path")->required();

  auto* optimize = app.add_subcommand("optimize", "maximize the weighted objective");
  optimize->add_option("config", inv.config_path, "YAML channel config")->required();
  optimize->add_option("--mus", mus, "rate weights, one per user")->required();
  optimize->add_option("--lambda", lambda, "distortion weight")->required();
  optimize->add_option("--oracle-res", oracle_res, "also run the grid oracle at this resolution");
  optimize->add_option("--out", inv.out, "write JSON here instead of stdout");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo check of the scheme");
  simulate->add_option("config", inv.config_path, "YAML channel config")->required();
  simulate->add_option("--split", split, "power split gamma per user")->required();
  simulate->add_option("--n", n, "block length")->required();
  simulate->add_option("--seed", seed, "RNG seed")->default_val(1);
  simulate->add_option("--mode", mode, "distortion or dpc-rate")
      ->check(CLI::IsMember({"distortion", "dpc-rate"}));
  simulate->add_option("--order", order, "decoding order for dpc-rate, 1-based");
  simulate->add_option("--out", inv.out, "write JSON here instead of stdout");

  auto* vertices = app.add_subcommand("vertices", "polymatroid vertices at a fixed split");
  vertices->add_option("config", inv.config_path, "YAML channel config")->required();
  vertices->add_option("--split", split, "power split gamma per user")->required();
  vertices->add_option("--out", inv.out, "write CSV here instead of stdout");

  auto* verify = app.add_subcommand("verify", "run the property checks");
  verify->add_option("config", inv.config_path, "YAML channel config")->required();
  verify->add_option("--suite", suite, "quick or full")
      ->check(CLI::IsMember({"quick", "default", "full"}));
  verify->add_option("--seed", seed, "RNG seed")->default_val(20240617);

  auto* rerun_cmd = app.add_subcommand("rerun", "regenerate an output from its manifest");
  rerun_cmd->add_option("manifest", manifest_path, "*.manifest.json")->required();
  rerun_cmd->add_option("--out", inv.out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ExitCode::kUsage;
  }

  try {
    if (rerun_cmd->parsed()) return rerun(manifest_path, inv.out);

    auto& p = inv.parameters;
    if (region2->parsed()) {
      inv.command = "region2";
      p["grid"] = grid;
    } else if (xsec->parsed()) {
      inv.command = "xsec";
      p["distortion"] = distortion;
      p["grid"] = grid;
    } else if (optimize->parsed()) {
      inv.command = "optimize";
      p["mus"] = mus;
      p["lambda"] = lambda;
      if (oracle_res > 0) p["oracle_res"] = oracle_res;
    } else if (simulate->parsed()) {
      inv.command = "simulate";
      p["split"] = split;
      p["n"] = n;
      p["seed"] = seed;
      p["mode"] = mode;
      if (!order.empty()) p["order"] = order;
    } else if (vertices->parsed()) {
      inv.command = "vertices";
      p["split"] = split;
    } else {
      inv.command = "verify";
      p["suite"] = suite;
      p["seed"] = seed;
    }
    if (p.contains("grid") && grid < 2) {
      throw macamp::io::ConfigError("grid must be ≥ 2");
    }
    const auto config = macamp::io::load_config(inv.config_path);
    const auto result = macamp::cli::run_command(inv.command, config, p);
    return emit(result, inv.command, config, p, inv.out);
  } catch (const macamp::Infeasible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode::kInfeasible;
  } catch (const macamp::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode::kVerificationFailed;
  } catch (const macamp::io::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode::kUsage;
  } catch (const macamp::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode::kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed parameters: " << e.what() << "\n";
    return ExitCode::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
