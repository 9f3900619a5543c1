#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "macamp/io.hpp"
#include "macamp/tradeoff_n_user.hpp"
#include "macamp/tradeoff_two_user.hpp"

using namespace macamp;

namespace {

std::string config_error(const std::string& text) {
  try {
    io::parse_config(text, "cfg.yaml");
  } catch (const io::ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("parse a complete config") {
  const auto c = io::parse_config(
      "users:\n  - power: 2\n  - power: 0.5\nstate_var: 1.5\nnoise_var: 0.25\n"
      "state_coupling: 0\n");
  CHECK(c.powers == std::vector<double>{2, 0.5});
  CHECK(c.state_var == 1.5);
  CHECK(c.noise_var == 0.25);
  CHECK(c.state_coupling == 0.0);
  CHECK(io::parse_config("users: [{power: 1}]\nstate_var: 1\nnoise_var: 1\n").state_coupling ==
        1.0);
}

TEST_CASE("config errors carry the origin and position") {
  CHECK(config_error("users: [{power: 1}]\nstate_var: 1\nnoise_var: 1\nbogus: 3\n")
            .find("cfg.yaml:4:1: unknown key 'bogus'") != std::string::npos);
  CHECK(config_error("users: [{power: 1}]\nstate_var: 1\n").find("missing 'noise_var'") !=
        std::string::npos);
  CHECK(config_error("users: [{power: x}]\nstate_var: 1\nnoise_var: 1\n")
            .find("must be a number") != std::string::npos);
  CHECK(config_error("users: [{power: 1}]\nstate_var: 0\nnoise_var: 1\n")
            .find("state_var must be positive") != std::string::npos);
  CHECK(config_error("users: [{power: 1, gain: 2}]\nstate_var: 1\nnoise_var: 1\n")
            .find("unknown user key 'gain'") != std::string::npos);
  CHECK(config_error("users: [\n").find("cfg.yaml") != std::string::npos);
}

TEST_CASE("missing config file names the path") {
  try {
    io::load_config("/nonexistent/dir/channel.yaml");
    FAIL("expected an error");
  } catch (const io::ConfigError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/dir/channel.yaml") != std::string::npos);
  }
}

TEST_CASE("number formatting round-trips at twelve significant digits") {
  CHECK(io::format_number(0.0) == "0");
  CHECK(io::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(io::format_number(1e-20) == "1e-20");
}

TEST_CASE("surface CSV") {
  const ChannelConfig fig3{{2, 2}, 1, 1, 1};
  const auto csv = io::surface_csv(surface_samples(fig3, 64));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "gamma,beta,r1,r2,log2QoverD,tag");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 16384u);
}

TEST_CASE("vertex CSV lists every permutation") {
  const ChannelConfig c{{1, 2, 3}, 1, 1, 1};
  const PowerSplit s{{0.5, 0.5, 0.5}};
  const auto csv = io::vertices_csv(c, s, polymatroid_vertices(c, s));
  CHECK(csv.rfind("permutation,r1,r2,r3,distortion\n", 0) == 0);
  CHECK(csv.find("\n3-2-1,") != std::string::npos);
}

TEST_CASE("manifest JSON round trip") {
  io::RunManifest m;
  m.command = "xsec";
  m.config = ChannelConfig{{2, 2}, 1, 1, 1};
  m.parameters = {{"distortion", 0.66}, {"grid", 512}};
  m.timestamp = io::utc_timestamp();
  m.output = "x.csv";
  const auto back = io::manifest_from_json(nlohmann::json::parse(io::to_json(m).dump()));
  CHECK(back.command == "xsec");
  CHECK(back.config.powers == m.config.powers);
  CHECK(back.parameters == m.parameters);
  CHECK(back.tool_version == io::kToolVersion);
  CHECK(io::manifest_path_for("out/x.csv") == std::filesystem::path("out/x.csv.manifest.json"));
}

TEST_CASE("atomic writes leave no temporary file") {
  const auto dir = std::filesystem::temp_directory_path() / "macamp_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.csv";
  io::write_atomic(path, "a,b\n1,2\n");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "a,b\n1,2\n");
  CHECK_FALSE(std::filesystem::exists(dir / "out.csv.tmp"));
  std::filesystem::remove_all(dir);
}
