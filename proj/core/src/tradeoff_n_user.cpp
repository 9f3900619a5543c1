#include "macamp/tradeoff_n_user.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace macamp {

namespace {

void check_subset(const ChannelConfig& config, UserSet subset) {
  const std::size_t n = config.n_users();
  if (n > kMaxSubsetUsers) {
    throw InvalidArgument("subset queries support at most 32 users");
  }
  if ((subset & ~all_users(n)) != 0) {
    throw InvalidArgument("subset contains a user index >= " + std::to_string(n));
  }
}

double message_power(const ChannelConfig& config, const PowerSplit& split, UserSet subset) {
  double sum = 0.0;
  for (std::size_t j = 0; j < config.n_users(); ++j) {
    if (subset & (UserSet{1} << j)) sum += split[j] * config.powers[j];
  }
  return sum;
}

struct DistortionTerms {
  double residual;   // N0 + sum gamma_j P_j
  double amplitude;  // a sqrt(Q) + sum sqrt((1 - gamma_j) P_j)
};

DistortionTerms distortion_terms(const ChannelConfig& config, const PowerSplit& split) {
  DistortionTerms t{config.noise_var, config.state_coupling * std::sqrt(config.state_var)};
  for (std::size_t j = 0; j < config.n_users(); ++j) {
    t.residual += split[j] * config.powers[j];
    t.amplitude += std::sqrt((1.0 - split[j]) * config.powers[j]);
  }
  return t;
}

}  // namespace

SubsetRateCap subset_rate_cap(const ChannelConfig& config, const PowerSplit& split, UserSet subset) {
  validate_split(config, split);
  check_subset(config, subset);
  const double p = message_power(config, split, subset);
  return {subset, 0.5 * std::log2(1.0 + p / config.noise_var)};
}

double distortion_bound_n(const ChannelConfig& config, const PowerSplit& split) {
  validate_split(config, split);
  const auto t = distortion_terms(config, split);
  return config.state_var * t.residual / (t.residual + t.amplitude * t.amplitude);
}

double log2_state_gain_n(const ChannelConfig& config, const PowerSplit& split) {
  validate_split(config, split);
  const auto t = distortion_terms(config, split);
  return std::log2(1.0 + t.amplitude * t.amplitude / t.residual);
}

std::vector<double> vertex_for_order(const ChannelConfig& config, const PowerSplit& split,
                                     const std::vector<std::size_t>& order) {
  const std::size_t n = config.n_users();
  validate_split(config, split);
  if (order.size() != n) throw InvalidArgument("decoding order must list every user once");
  std::vector<bool> seen(n, false);
  for (auto u : order) {
    if (u >= n || seen[u]) throw InvalidArgument("invalid decoding order");
    seen[u] = true;
  }
  // The user decoded at position k gets g({order[k..]}) - g({order[k+1..]}).
  std::vector<double> rates(n, 0.0);
  UserSet tail = 0;
  double tail_cap = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    tail |= UserSet{1} << order[k];
    const double cap = subset_rate_cap(config, split, tail).cap;
    rates[order[k]] = cap - tail_cap;
    tail_cap = cap;
  }
  return rates;
}

std::vector<PolymatroidVertex> polymatroid_vertices(const ChannelConfig& config,
                                                    const PowerSplit& split) {
  const std::size_t n = config.n_users();
  if (n > kMaxVertexUsers) throw InvalidArgument("vertex enumeration capped at N=8");
  validate_split(config, split);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<PolymatroidVertex> out;
  do {
    out.push_back({perm, vertex_for_order(config, split, perm)});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

double max_cap_violation(const ChannelConfig& config, const PowerSplit& split,
                         const std::vector<double>& rates) {
  const std::size_t n = config.n_users();
  if (rates.size() != n) throw InvalidArgument("rate vector length mismatch");
  if (n > 20) throw InvalidArgument("exhaustive cap check limited to 20 users");
  double worst = -std::numeric_limits<double>::infinity();
  for (UserSet s = 1; s <= all_users(n); ++s) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (s & (UserSet{1} << j)) sum += rates[j];
    }
    worst = std::max(worst, sum - subset_rate_cap(config, split, s).cap);
  }
  for (double r : rates) worst = std::max(worst, -r);
  return worst;
}

SubmodularityReport check_submodular(const ChannelConfig& config, const PowerSplit& split,
                                     std::size_t trials, std::uint64_t seed) {
  validate_split(config, split);
  const std::size_t n = config.n_users();
  check_subset(config, 0);
  std::mt19937_64 rng(seed);
  const UserSet full = all_users(n);
  SubmodularityReport report;
  report.trials = trials;
  report.max_violation = -std::numeric_limits<double>::infinity();
  auto g = [&](UserSet s) { return subset_rate_cap(config, split, s).cap; };
  for (std::size_t t = 0; t < trials; ++t) {
    const auto a = static_cast<UserSet>(rng()) & full;
    const auto b = static_cast<UserSet>(rng()) & full;
    const double violation = g(a | b) + g(a & b) - g(a) - g(b);
    if (violation > report.max_violation) {
      report.max_violation = violation;
      report.worst_a = a;
      report.worst_b = b;
    }
  }
  if (trials == 0) report.max_violation = 0.0;
  return report;
}

}  // namespace macamp
