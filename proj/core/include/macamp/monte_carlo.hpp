#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "macamp/channel_model.hpp"

namespace macamp {

inline constexpr std::size_t kMinBlockLength = 100;
inline constexpr std::size_t kSubstreamLength = 8192;

// Sample mean and standard error (sample std / sqrt(n)) of a per-symbol quantity.
struct Estimate {
  double mean = 0.0;
  double se = 0.0;
};

struct RateEstimate {
  Estimate estimate;
  double target = 0.0;  // closed-form rate, bits
  bool exact = false;   // zero message power: reported exactly, not sampled
};

struct SimulationReport {
  std::string kind;  // "distortion" or "dpc_rate"
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string generator;
  PowerSplit split;

  // simulate_distortion
  double mmse_coeff = 0.0;
  Estimate distortion;
  double distortion_target = 0.0;
  std::vector<double> empirical_powers;
  std::vector<double> power_budgets;
  Estimate var_s;
  Estimate var_y;
  Estimate cov_sy;

  // estimate_dpc_rate
  std::vector<std::size_t> decoding_order;
  std::vector<RateEstimate> rates;
  std::string conditioning;
};

// Draws n symbols of the power-split scheme with Gaussian message components
// and measures the linear-MMSE distortion, transmit powers and (S, Y) moments.
// Deterministic in (config, split, n, seed).
SimulationReport simulate_distortion(const ChannelConfig& config, const PowerSplit& split,
                                     std::size_t n, std::uint64_t seed);

// Information-density estimate of I(U;Y) - I(U;S') for both users of the
// two-user scheme under the given decoding order (first entry decoded first).
SimulationReport estimate_dpc_rate(const ChannelConfig& config, const PowerSplit& split,
                                   const std::vector<std::size_t>& order, std::size_t n,
                                   std::uint64_t seed);

// Each empirical power must stay below P_j (1 + 5 sqrt(2 / n)).
bool power_audit(const SimulationReport& report);

// Seed of substream `index` derived from a base seed (splitmix64 mixing).
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace macamp
