#include "macamp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "macamp/dpc_scheme.hpp"
#include "macamp/io.hpp"
#include "macamp/monte_carlo.hpp"
#include "macamp/tradeoff_n_user.hpp"
#include "macamp/tradeoff_two_user.hpp"

namespace macamp::verify {

namespace {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

CheckResult skipped(std::string name, std::string why) {
  CheckResult r;
  r.name = std::move(name);
  r.detail = "skipped: " + why;
  return r;
}

// Records a deviation measured against an upper tolerance.
void record(CheckResult& r, double deviation, const std::string& where = {}) {
  ++r.trials;
  if (deviation > r.worst || r.trials == 1) {
    r.worst = deviation;
    if (!where.empty()) r.detail = where;
  }
  if (!(deviation <= r.tolerance)) r.passed = false;
}

double f_sum_rate_gain(const ChannelConfig& c, const PowerSplit& s) {
  return subset_rate_cap(c, s, all_users(c.n_users())).cap +
         0.5 * std::log2(c.state_var / distortion_bound_n(c, s));
}

WeightVector scramble(const WeightVector& normalized, Rng& rng, std::vector<std::size_t>* perm) {
  const std::size_t n = normalized.mus.size();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::shuffle(p.begin(), p.end(), rng);
  const double scale = uniform(rng, 0.5, 2.0);
  WeightVector raw;
  raw.mus.resize(n);
  for (std::size_t k = 0; k < n; ++k) raw.mus[p[k]] = normalized.mus[k] * scale;
  raw.lambda = normalized.lambda * scale;
  if (perm) *perm = p;
  return raw;
}

std::string describe(const WeightVector& w) {
  std::ostringstream os;
  os << "mu=(";
  for (std::size_t i = 0; i < w.mus.size(); ++i) os << (i ? "," : "") << w.mus[i];
  os << ") lambda=" << w.lambda;
  return os.str();
}

}  // namespace

ChannelConfig random_config(Rng& rng, std::size_t n_users, double coupling) {
  ChannelConfig c;
  for (std::size_t i = 0; i < n_users; ++i) c.powers.push_back(uniform(rng, 0.2, 5.0));
  c.state_var = uniform(rng, 0.2, 3.0);
  c.noise_var = uniform(rng, 0.2, 2.0);
  c.state_coupling = coupling;
  return c;
}

PowerSplit random_split(Rng& rng, std::size_t n_users) {
  PowerSplit s;
  for (std::size_t i = 0; i < n_users; ++i) s.gammas.push_back(uniform(rng, 0.0, 1.0));
  return s;
}

WeightVector random_normalized_weights(Rng& rng, std::size_t n_users, double lambda_lo,
                                       double lambda_hi) {
  WeightVector w;
  for (std::size_t i = 0; i < n_users; ++i) w.mus.push_back(uniform(rng, 1.0, 4.0));
  std::sort(w.mus.begin(), w.mus.end(), std::greater<>());
  w.mus.back() = 1.0;
  w.lambda = uniform(rng, lambda_lo, lambda_hi);
  return w;
}

CheckResult distortion_monotone(const ChannelConfig& config, std::size_t trials, Rng& rng) {
  CheckResult r{"distortion monotone in gamma"};
  r.tolerance = 1e-14;
  const std::size_t n = config.n_users();
  for (std::size_t t = 0; t < trials; ++t) {
    auto x = random_split(rng, n);
    auto y = x;
    const std::size_t i = pick(rng, n);
    y.gammas[i] = uniform(rng, x[i], 1.0);
    record(r, distortion_bound_n(config, x) - distortion_bound_n(config, y));
  }
  return r;
}

CheckResult sum_rate_gain_monotone(const ChannelConfig& config, std::size_t trials, Rng& rng) {
  CheckResult r{"sum-rate + gain non-increasing (lambda > 1 reduction)"};
  r.tolerance = 1e-12;
  const std::size_t n = config.n_users();
  for (std::size_t t = 0; t < trials; ++t) {
    auto x = random_split(rng, n);
    auto y = x;
    const std::size_t i = pick(rng, n);
    y.gammas[i] = uniform(rng, x[i], 1.0);
    record(r, f_sum_rate_gain(config, y) - f_sum_rate_gain(config, x));
  }
  return r;
}

CheckResult midpoint_concavity(const ChannelConfig& config, std::size_t trials, Rng& rng) {
  CheckResult r{"strict midpoint concavity (0 < lambda < 1)"};
  // Deviation is the negated concavity gap; it must stay strictly below 0.
  r.tolerance = 0.0;
  const std::size_t n = config.n_users();
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < n; ++i) {
    if (config.powers[i] > 0.0) live.push_back(i);
  }
  if (live.empty()) return skipped(r.name, "no user has positive power");
  r.worst = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    const auto w = random_normalized_weights(rng, n, 0.0, 1.0);
    if (w.lambda <= 0.0 || w.lambda >= 1.0) continue;
    PowerSplit x = random_split(rng, n);
    PowerSplit y = x;
    double sep = 0.0;
    while (sep < 1e-3) {
      for (auto i : live) y.gammas[i] = uniform(rng, 0.0, 1.0);
      sep = 0.0;
      for (auto i : live) sep = std::max(sep, std::abs(x[i] - y[i]));
    }
    PowerSplit m = x;
    for (std::size_t i = 0; i < n; ++i) m.gammas[i] = 0.5 * (x[i] + y[i]);
    const double gap = weighted_objective(config, w, m) -
                       0.5 * (weighted_objective(config, w, x) + weighted_objective(config, w, y));
    ++r.trials;
    if (-gap > r.worst) {
      r.worst = -gap;
      r.detail = describe(w);
    }
    if (!(gap > 0.0)) r.passed = false;
  }
  return r;
}

CheckResult submodularity(const ChannelConfig& config, std::size_t trials, Rng& rng) {
  CheckResult r{"subset caps submodular"};
  r.tolerance = 1e-12;
  if (config.n_users() > kMaxSubsetUsers) return skipped(r.name, "more than 32 users");
  for (std::size_t t = 0; t < trials; ++t) {
    const auto split = random_split(rng, config.n_users());
    const auto rep = check_submodular(config, split, 1, rng());
    record(r, rep.max_violation);
  }
  return r;
}

CheckResult corner_telescoping(const ChannelConfig& config, std::size_t trials, Rng& rng) {
  CheckResult r{"corner / decoding-order telescoping"};
  r.tolerance = 1e-12;
  const std::size_t n = config.n_users();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t t = 0; t < trials; ++t) {
    const auto split = random_split(rng, n);
    const double full = subset_rate_cap(config, split, all_users(n)).cap;
    std::shuffle(order.begin(), order.end(), rng);
    const auto sc = n_user_sc_rates(config, split, order);
    const auto chain = vertex_for_order(config, split, order);
    double dev = std::abs(std::accumulate(sc.begin(), sc.end(), 0.0) - full);
    for (std::size_t i = 0; i < n; ++i) dev = std::max(dev, std::abs(sc[i] - chain[i]));
    if (n == 2) {
      const auto caps = rate_caps(config, split[0], split[1]);
      const auto c = corner_points(config, split[0], split[1]);
      dev = std::max(dev, std::abs(c.a1.r1 + c.a1.r2 - caps.rsum_cap));
      dev = std::max(dev, std::abs(c.a2.r1 + c.a2.r2 - caps.rsum_cap));
    }
    record(r, dev);
  }
  return r;
}

CheckResult pentagon_validity(const ChannelConfig& config, std::size_t trials, Rng& rng) {
  CheckResult r{"pentagon validity"};
  r.tolerance = 1e-12;
  if (config.n_users() != 2) return skipped(r.name, "two-user check");
  for (std::size_t t = 0; t < trials; ++t) {
    const double g = uniform(rng, 0.0, 1.0);
    const double b = uniform(rng, 0.0, 1.0);
    const auto caps = rate_caps(config, g, b);
    record(r, std::max({caps.rsum_cap - caps.r1_cap - caps.r2_cap,
                        std::max(caps.r1_cap, caps.r2_cap) - caps.rsum_cap, -caps.r1_cap,
                        -caps.r2_cap}));
  }
  return r;
}

CheckResult regime_continuity(const ChannelConfig& config, std::size_t trials, Rng& rng) {
  CheckResult r{"regime continuity across lambda boundaries"};
  constexpr double kEps = 1e-10;
  const std::size_t n = config.n_users();
  const double slope = 0.5 * std::log2(config.state_var /
                                       distortion_bound_n(config, PowerSplit{std::vector<double>(n, 0.0)}));
  r.tolerance = 1e-9 + 2.0 * slope * kEps;
  for (std::size_t t = 0; t < trials; ++t) {
    auto w = random_normalized_weights(rng, n, 0.0, 0.0);
    std::vector<double> boundaries{1.0};
    for (std::size_t j = 0; j + 1 < n; ++j) boundaries.push_back(w.mus[j]);
    const double b = boundaries[pick(rng, boundaries.size())];
    auto at = [&](double lambda) {
      auto v = w;
      v.lambda = lambda;
      return converse_bound(config, v).value;
    };
    const double lo = at(b - kEps);
    const double mid = at(b);
    const double hi = at(b + kEps);
    w.lambda = b;
    record(r, std::max(std::abs(mid - lo), std::abs(hi - mid)), describe(w));
  }
  return r;
}

CheckResult oracle_equivalence(const ChannelConfig& config, std::size_t trials,
                               std::size_t resolution, double tolerance, double lambda_max,
                               Rng& rng) {
  CheckResult r{"converse bound vs grid oracle (res " + std::to_string(resolution) + ")"};
  r.tolerance = tolerance;
  if (config.n_users() > 4) return skipped(r.name, "grid oracle limited to 4 users");
  for (std::size_t t = 0; t < trials; ++t) {
    const auto w = random_normalized_weights(rng, config.n_users(), 0.0, lambda_max);
    const auto raw = scramble(w, rng, nullptr);
    const auto bound = converse_bound(config, raw);
    const auto grid = grid_oracle(config, raw, resolution);
    double dev = std::abs(bound.value - grid.value);
    // The grid is a restriction of the feasible set.
    if (grid.value > bound.value + 1e-6) dev = std::max(dev, 2.0 * tolerance);
    record(r, dev, describe(raw));
  }
  return r;
}

CheckResult tightness(const ChannelConfig& config, std::size_t trials, Rng& rng) {
  CheckResult r{"converse = best achievable vertex at optimizing split"};
  r.tolerance = 1e-6;
  if (config.n_users() > kMaxVertexUsers) return skipped(r.name, "vertex enumeration capped");
  for (std::size_t t = 0; t < trials; ++t) {
    const auto w = random_normalized_weights(rng, config.n_users(), 0.0, 3.0);
    const auto raw = scramble(w, rng, nullptr);
    const auto bound = converse_bound(config, raw);
    const auto vertices = polymatroid_vertices(config, bound.split);
    const double gain =
        0.5 * raw.lambda * std::log2(config.state_var / distortion_bound_n(config, bound.split));
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> values;
    for (const auto& v : vertices) {
      double s = 0.0;
      for (std::size_t i = 0; i < v.rates.size(); ++i) s += raw.mus[i] * v.rates[i];
      values.push_back(s);
      best = std::max(best, s);
    }
    // Time-sharing between neighbouring vertices cannot beat the best vertex.
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
      best = std::max(best, 0.5 * (values[k] + values[k + 1]));
    }
    record(r, std::abs(bound.value - (best + gain)), describe(raw));
  }
  return r;
}

CheckResult uncoded_helper_reduction(std::size_t configs, std::size_t grid, Rng& rng) {
  CheckResult r{"three-sender uncoded-helper reduction"};
  r.tolerance = 1e-12;
  for (std::size_t t = 0; t < configs; ++t) {
    const ChannelConfig three = random_config(rng, 3, 0.0);
    const ChannelConfig two = reduce_uncoded_user(three, 2);
    const double p1 = three.powers[0];
    const double p2 = three.powers[1];
    const double p3 = three.powers[2];
    const double q = three.state_var;
    const double n0 = three.noise_var;
    for (std::size_t i = 0; i < grid; ++i) {
      for (std::size_t j = 0; j < grid; ++j) {
        const double g = static_cast<double>(i) / static_cast<double>(grid - 1);
        const double b = static_cast<double>(j) / static_cast<double>(grid - 1);
        const PowerSplit s3{{g, b, 0.0}};
        const auto caps = rate_caps(two, g, b);
        double dev = std::abs(subset_rate_cap(three, s3, 0b001).cap - caps.r1_cap);
        dev = std::max(dev, std::abs(subset_rate_cap(three, s3, 0b010).cap - caps.r2_cap));
        dev = std::max(dev, std::abs(subset_rate_cap(three, s3, 0b011).cap - caps.rsum_cap));
        // Same rates with the third user silent in the message layer.
        dev = std::max(dev, std::abs(subset_rate_cap(three, s3, 0b111).cap - caps.rsum_cap));
        // Distortion of S versus distortion of S' = sqrt(P3/Q) S.
        const double d3 = distortion_bound_n(three, s3);
        const double d2 = distortion_bound(two, g, b);
        dev = std::max(dev, std::abs(d3 - d2 * q / two.state_var));
        // Closed form with the helper's power in the cross terms.
        const double gb = 1.0 - g;
        const double bb = 1.0 - b;
        const double closed = q * (n0 + g * p1 + b * p2) /
                              (p1 + p2 + p3 + n0 + 2.0 * std::sqrt(gb * p1 * p3) +
                               2.0 * std::sqrt(bb * p2 * p3) + 2.0 * std::sqrt(gb * bb * p1 * p2));
        dev = std::max(dev, std::abs(d3 - closed));
        record(r, dev);
      }
    }
  }
  return r;
}

CheckResult lmmse_consistency(const ChannelConfig& config, std::size_t trials, Rng& rng) {
  CheckResult r{"MSE at MMSE coefficient equals distortion bound"};
  r.tolerance = 1e-12;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto split = random_split(rng, config.n_users());
    const double c = lmmse_coefficient_n(config, split);
    const double mse = estimate_mse(config, split, c);
    double dev = std::abs(mse - distortion_bound_n(config, split)) / config.state_var;
    const double h = 1e-4;
    dev = std::max(dev, mse - estimate_mse(config, split, c + h));
    dev = std::max(dev, mse - estimate_mse(config, split, c - h));
    record(r, dev);
  }
  return r;
}

CheckResult mc_distortion(const ChannelConfig& config, std::size_t pairs, std::size_t n, Rng& rng) {
  CheckResult r{"Monte Carlo distortion within 4 SE"};
  r.tolerance = 4.0;
  for (std::size_t t = 0; t < pairs; ++t) {
    const auto split = random_split(rng, config.n_users());
    const auto rep = simulate_distortion(config, split, n, rng());
    const double z = std::abs(rep.distortion.mean - rep.distortion_target) / rep.distortion.se;
    record(r, z);
  }
  return r;
}

CheckResult mc_dpc_rate(const ChannelConfig& config, std::size_t pairs, std::size_t n, Rng& rng) {
  CheckResult r{"information-density DPC rates within 4 SE"};
  r.tolerance = 4.0;
  if (config.n_users() != 2 || config.state_coupling != 1.0) {
    return skipped(r.name, "needs two users and state_coupling 1");
  }
  for (std::size_t t = 0; t < pairs; ++t) {
    const auto split = random_split(rng, 2);
    const std::vector<std::size_t> order =
        pick(rng, 2) == 0 ? std::vector<std::size_t>{0, 1} : std::vector<std::size_t>{1, 0};
    const auto rep = estimate_dpc_rate(config, split, order, n, rng());
    for (const auto& rate : rep.rates) {
      if (rate.exact) {
        record(r, rate.estimate.mean == 0.0 && rate.target == 0.0 ? 0.0 : 1e300);
      } else {
        record(r, std::abs(rate.estimate.mean - rate.target) / rate.estimate.se);
      }
    }
  }
  return r;
}

CheckResult mc_determinism(const ChannelConfig& config, std::size_t n, std::uint64_t seed) {
  CheckResult r{"deterministic replay"};
  r.tolerance = 0.0;
  const PowerSplit split{std::vector<double>(config.n_users(), 0.5)};
  const auto a = io::to_json(simulate_distortion(config, split, n, seed)).dump();
  const auto b = io::to_json(simulate_distortion(config, split, n, seed)).dump();
  record(r, a == b ? 0.0 : 1.0);
  if (config.n_users() == 2 && config.state_coupling == 1.0) {
    const auto c = io::to_json(estimate_dpc_rate(config, split, {0, 1}, n, seed)).dump();
    const auto d = io::to_json(estimate_dpc_rate(config, split, {0, 1}, n, seed)).dump();
    record(r, c == d ? 0.0 : 1.0);
  }
  return r;
}

CheckResult mc_power_audit(const ChannelConfig& config, std::size_t seeds, std::size_t n, Rng& rng) {
  CheckResult r{"power audit failure rate <= 1%"};
  r.tolerance = 0.01;
  std::size_t failures = 0;
  for (std::size_t t = 0; t < seeds; ++t) {
    const auto split = random_split(rng, config.n_users());
    if (!power_audit(simulate_distortion(config, split, n, rng()))) ++failures;
  }
  r.trials = seeds;
  r.worst = seeds ? static_cast<double>(failures) / static_cast<double>(seeds) : 0.0;
  r.passed = r.worst <= r.tolerance;
  return r;
}

std::vector<CheckResult> run_suite(const ChannelConfig& config, SuiteLevel level,
                                   std::uint64_t seed) {
  validate(config);
  const bool full = level == SuiteLevel::kFull;
  const std::size_t trials = full ? 10000 : 1000;
  Rng rng(seed);
  std::vector<CheckResult> out;
  out.push_back(distortion_monotone(config, trials, rng));
  out.push_back(sum_rate_gain_monotone(config, trials, rng));
  out.push_back(midpoint_concavity(config, trials, rng));
  out.push_back(submodularity(config, trials, rng));
  out.push_back(corner_telescoping(config, trials, rng));
  out.push_back(pentagon_validity(config, trials, rng));
  out.push_back(lmmse_consistency(config, trials, rng));
  out.push_back(regime_continuity(config, full ? 200 : 30, rng));
  const std::size_t res = config.n_users() <= 2 ? 512 : (config.n_users() == 3 ? 192 : 40);
  out.push_back(oracle_equivalence(config, full ? 50 : 8, res, 1e-3, 3.0, rng));
  out.push_back(tightness(config, full ? 100 : 20, rng));
  out.push_back(uncoded_helper_reduction(full ? 8 : 2, 64, rng));
  out.push_back(mc_distortion(config, full ? 20 : 5, 100000, rng));
  out.push_back(mc_dpc_rate(config, full ? 10 : 3, 100000, rng));
  out.push_back(mc_determinism(config, 20000, seed));
  out.push_back(mc_power_audit(config, full ? 100 : 20, 10000, rng));
  return out;
}

}  // namespace macamp::verify
