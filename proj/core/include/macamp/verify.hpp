#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "macamp/channel_model.hpp"
#include "macamp/weighted_sum.hpp"

// Randomized property checks shared by `macamp verify` and the test suites.
// Each check returns its worst observed deviation next to the tolerance it
// was held to.
namespace macamp::verify {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t trials = 0;
  double worst = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

using Rng = std::mt19937_64;

ChannelConfig random_config(Rng& rng, std::size_t n_users, double coupling = 1.0);
PowerSplit random_split(Rng& rng, std::size_t n_users);
// Sorted non-increasing with last entry 1; lambda uniform in [lambda_lo, lambda_hi].
WeightVector random_normalized_weights(Rng& rng, std::size_t n_users, double lambda_lo,
                                       double lambda_hi);

// D is non-decreasing in every gamma.
CheckResult distortion_monotone(const ChannelConfig& config, std::size_t trials, Rng& rng);
// Rsum(all) + 1/2 log2(Q/D) is non-increasing in every gamma.
CheckResult sum_rate_gain_monotone(const ChannelConfig& config, std::size_t trials, Rng& rng);
// Case 1 objective with lambda in (0,1) is strictly midpoint-concave.
CheckResult midpoint_concavity(const ChannelConfig& config, std::size_t trials, Rng& rng);
CheckResult submodularity(const ChannelConfig& config, std::size_t trials, Rng& rng);
// Corner points sum to the sum-rate cap; every decoding order telescopes.
CheckResult corner_telescoping(const ChannelConfig& config, std::size_t trials, Rng& rng);
// max(r1, r2) <= rsum <= r1 + r2 for the two-user caps.
CheckResult pentagon_validity(const ChannelConfig& config, std::size_t trials, Rng& rng);
// Converse bound is continuous across lambda = 1 and lambda = mu_j.
CheckResult regime_continuity(const ChannelConfig& config, std::size_t trials, Rng& rng);
// |converse_bound - grid_oracle| within tolerance, oracle never above.
CheckResult oracle_equivalence(const ChannelConfig& config, std::size_t trials,
                               std::size_t resolution, double tolerance, double lambda_max,
                               Rng& rng);
// Converse value equals the best achievable vertex (and time-sharing of
// vertices) at the reported split.
CheckResult tightness(const ChannelConfig& config, std::size_t trials, Rng& rng);
// Three senders, coupling 0, third user uncoded: agrees with the reduced
// two-user region on a grid.
CheckResult uncoded_helper_reduction(std::size_t configs, std::size_t grid, Rng& rng);
// MSE at the MMSE coefficient equals the distortion bound.
CheckResult lmmse_consistency(const ChannelConfig& config, std::size_t trials, Rng& rng);
CheckResult mc_distortion(const ChannelConfig& config, std::size_t pairs, std::size_t n, Rng& rng);
CheckResult mc_dpc_rate(const ChannelConfig& config, std::size_t pairs, std::size_t n, Rng& rng);
CheckResult mc_determinism(const ChannelConfig& config, std::size_t n, std::uint64_t seed);
CheckResult mc_power_audit(const ChannelConfig& config, std::size_t seeds, std::size_t n, Rng& rng);

enum class SuiteLevel { kQuick, kFull };

std::vector<CheckResult> run_suite(const ChannelConfig& config, SuiteLevel level,
                                   std::uint64_t seed = 20240617);

}  // namespace macamp::verify
