#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "macamp/channel_model.hpp"

namespace macamp::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInfeasible = 3,
  kVerificationFailed = 4,
};

struct CommandOutput {
  std::string body;  // CSV, JSON or a text table
  int exit_code = kOk;
};

// Runs `command` on a resolved config with manifest-style parameters. The
// body depends only on (command, config, parameters), which is what makes a
// manifest sufficient to regenerate an output.
CommandOutput run_command(const std::string& command, const ChannelConfig& config,
                          const nlohmann::json& parameters);

}  // namespace macamp::cli
