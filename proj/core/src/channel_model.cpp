#include "macamp/channel_model.hpp"

#include <cmath>
#include <string>

namespace macamp {

const ChannelConfig& validate(const ChannelConfig& config, std::size_t expected_users) {
  if (config.powers.empty()) {
    throw InvalidArgument("n_users must be positive");
  }
  if (expected_users != 0 && config.powers.size() != expected_users) {
    throw InvalidArgument("length mismatch: expected " + std::to_string(expected_users) +
                          " users, got " + std::to_string(config.powers.size()));
  }
  if (!(config.state_var > 0.0) || !std::isfinite(config.state_var)) {
    throw InvalidArgument("state_var must be positive");
  }
  if (!(config.noise_var > 0.0) || !std::isfinite(config.noise_var)) {
    throw InvalidArgument("noise_var must be positive");
  }
  for (std::size_t i = 0; i < config.powers.size(); ++i) {
    if (!(config.powers[i] >= 0.0) || !std::isfinite(config.powers[i])) {
      throw InvalidArgument("power of user " + std::to_string(i + 1) + " must be non-negative");
    }
  }
  if (!(config.state_coupling >= 0.0 && config.state_coupling <= 1.0)) {
    throw InvalidArgument("state_coupling must lie in [0, 1]");
  }
  return config;
}

void validate_split(const ChannelConfig& config, const PowerSplit& split) {
  if (split.size() != config.n_users()) {
    throw InvalidArgument("length mismatch: split has " + std::to_string(split.size()) +
                          " entries for " + std::to_string(config.n_users()) + " users");
  }
  for (std::size_t i = 0; i < split.size(); ++i) {
    if (!(split[i] >= 0.0 && split[i] <= 1.0)) {
      throw InvalidArgument("gamma of user " + std::to_string(i + 1) + " must lie in [0, 1]");
    }
  }
}

ChannelConfig reduce_uncoded_user(const ChannelConfig& config, std::size_t user) {
  validate(config);
  if (user >= config.n_users()) {
    throw InvalidArgument("user index " + std::to_string(user) + " out of range");
  }
  const double amplitude =
      config.state_coupling * std::sqrt(config.state_var) + std::sqrt(config.powers[user]);
  const double reduced_var = amplitude * amplitude;
  if (!(reduced_var > 0.0)) {
    throw InvalidArgument("reduction yields zero-variance state");
  }
  ChannelConfig out;
  out.powers.reserve(config.n_users() - 1);
  for (std::size_t i = 0; i < config.n_users(); ++i) {
    if (i != user) out.powers.push_back(config.powers[i]);
  }
  out.state_var = reduced_var;
  out.noise_var = config.noise_var;
  out.state_coupling = 1.0;
  return out;
}

}  // namespace macamp
