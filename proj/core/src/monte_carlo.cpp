#include "macamp/monte_carlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "macamp/dpc_scheme.hpp"
#include "macamp/parallel.hpp"
#include "macamp/tradeoff_n_user.hpp"

namespace macamp {

namespace {

constexpr const char* kGenerator =
    "mt19937_64 per 8192-symbol substream, seeded by splitmix64(seed, substream index); "
    "std::normal_distribution";

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Running mean / M2 (Welford), merged with Chan's formula.
struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }
  void merge(const Moments& o) {
    if (o.count == 0.0) return;
    const double total = count + o.count;
    const double delta = o.mean - mean;
    mean += delta * o.count / total;
    m2 += o.m2 + delta * delta * count * o.count / total;
    count = total;
  }
  Estimate estimate() const {
    const double var = count > 1.0 ? m2 / (count - 1.0) : 0.0;
    return {mean, std::sqrt(var / count)};
  }
};

// Runs fn(rng, moments) over n symbols split into fixed substreams and
// merges per-substream moments in index order.
template <std::size_t K, typename Fn>
std::array<Moments, K> run_blocks(std::size_t n, std::uint64_t seed, Fn&& fn) {
  const std::size_t blocks = (n + kSubstreamLength - 1) / kSubstreamLength;
  std::vector<std::array<Moments, K>> partial(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    std::mt19937_64 rng(substream_seed(seed, b));
    const std::size_t len = std::min(kSubstreamLength, n - b * kSubstreamLength);
    for (std::size_t t = 0; t < len; ++t) fn(rng, partial[b]);
  });
  std::array<Moments, K> total{};
  for (const auto& p : partial) {
    for (std::size_t k = 0; k < K; ++k) total[k].merge(p[k]);
  }
  return total;
}

// log2 p(b | a) / p(b) for zero-mean jointly Gaussian (a, b).
struct GaussianPair {
  double var_a;
  double var_b;
  double cov;

  double info_density(double a, double b) const {
    const double slope = cov / var_a;
    const double cond = var_b - cov * slope;
    const double r = b - slope * a;
    return 0.5 * std::log2(var_b / cond) -
           (r * r / cond - b * b / var_b) / (2.0 * std::numbers::ln2);
  }
};

}  // namespace

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

SimulationReport simulate_distortion(const ChannelConfig& config, const PowerSplit& split,
                                     std::size_t n, std::uint64_t seed) {
  validate(config);
  validate_split(config, split);
  if (n < kMinBlockLength) throw InvalidArgument("n too small (minimum 100)");
  const std::size_t users = config.n_users();
  if (users > 16) throw InvalidArgument("simulation supports at most 16 users");

  const auto gains = amplification_gains(config, split);
  std::vector<double> msg_sd(users);
  for (std::size_t i = 0; i < users; ++i) msg_sd[i] = std::sqrt(split[i] * config.powers[i]);
  const double c = lmmse_coefficient_n(config, split);
  const double state_sd = std::sqrt(config.state_var);
  const double noise_sd = std::sqrt(config.noise_var);
  const double coupling = config.state_coupling;

  // Slots: 0 squared error, 1 S^2, 2 Y^2, 3 S*Y, 4.. per-user X_i^2.
  constexpr std::size_t kSlots = 4 + 16;
  auto totals = run_blocks<kSlots>(n, seed, [&](std::mt19937_64& rng, auto& m) {
    std::normal_distribution<double> normal;
    const double s = state_sd * normal(rng);
    double y = coupling * s;
    for (std::size_t i = 0; i < users; ++i) {
      const double x = gains[i] * s + msg_sd[i] * normal(rng);
      m[4 + i].add(x * x);
      y += x;
    }
    y += noise_sd * normal(rng);
    const double err = s - c * y;
    m[0].add(err * err);
    m[1].add(s * s);
    m[2].add(y * y);
    m[3].add(s * y);
  });

  SimulationReport r;
  r.kind = "distortion";
  r.n = n;
  r.seed = seed;
  r.generator = kGenerator;
  r.split = split;
  r.mmse_coeff = c;
  r.distortion = totals[0].estimate();
  r.distortion_target = distortion_bound_n(config, split);
  r.var_s = totals[1].estimate();
  r.var_y = totals[2].estimate();
  r.cov_sy = totals[3].estimate();
  r.power_budgets = config.powers;
  for (std::size_t i = 0; i < users; ++i) r.empirical_powers.push_back(totals[4 + i].mean);
  return r;
}

SimulationReport estimate_dpc_rate(const ChannelConfig& config, const PowerSplit& split,
                                   const std::vector<std::size_t>& order, std::size_t n,
                                   std::uint64_t seed) {
  validate(config, 2);
  if (config.state_coupling != 1.0) {
    throw InvalidArgument("DPC rate estimation requires state_coupling = 1");
  }
  if (n < kMinBlockLength) throw InvalidArgument("n too small (minimum 100)");
  const auto params = two_user_dpc_params(config, split[0], split[1], order);
  const std::size_t first = order[0];
  const std::size_t second = order[1];
  const double n0 = config.noise_var;
  const double mf = params.message_vars[first];
  const double ms = params.message_vars[second];
  const double af = params.alpha_coeffs[first];
  const double as = params.alpha_coeffs[second];
  const double k = params.state_scale;
  const double v1 = k * k * config.state_var;  // Var(S')
  const double v2 = (1.0 - af) * (1.0 - af) * v1;  // Var(S'')

  // Stage 1: U_f = M_f + af S' against Y = M_f + M_s + S' + Z.
  const GaussianPair uy1{mf + af * af * v1, mf + ms + v1 + n0, mf + af * v1};
  const GaussianPair us1{mf + af * af * v1, v1, af * v1};
  // Stage 2: U_s = M_s + as S'' against Y~ = Y - U_f = M_s + S'' + Z.
  const GaussianPair uy2{ms + as * as * v2, ms + v2 + n0, ms + as * v2};
  const GaussianPair us2{ms + as * as * v2, v2, as * v2};

  const bool sample_first = mf > 0.0;
  const bool sample_second = ms > 0.0;
  const double state_sd = std::sqrt(config.state_var);
  const double noise_sd = std::sqrt(n0);
  const double sd_f = std::sqrt(mf);
  const double sd_s = std::sqrt(ms);

  auto totals = run_blocks<2>(n, seed, [&](std::mt19937_64& rng, auto& m) {
    std::normal_distribution<double> normal;
    const double s1 = k * state_sd * normal(rng);
    const double m_f = sd_f * normal(rng);
    const double m_s = sd_s * normal(rng);
    const double z = noise_sd * normal(rng);
    const double y = m_f + m_s + s1 + z;
    const double u_f = m_f + af * s1;
    if (sample_first) m[0].add(uy1.info_density(u_f, y) - us1.info_density(u_f, s1));
    if (sample_second) {
      const double s2 = (1.0 - af) * s1;
      const double y2 = y - u_f;
      const double u_s = m_s + as * s2;
      m[1].add(uy2.info_density(u_s, y2) - us2.info_density(u_s, s2));
    }
  });

  SimulationReport r;
  r.kind = "dpc_rate";
  r.n = n;
  r.seed = seed;
  r.generator = kGenerator;
  r.split = split;
  r.mmse_coeff = params.mmse_coeff;
  r.decoding_order = order;
  r.conditioning = "second-stage densities condition on the exact first-stage codeword U";
  r.rates.resize(2);
  r.rates[first].target = 0.5 * std::log2(1.0 + mf / (ms + n0));
  r.rates[second].target = 0.5 * std::log2(1.0 + ms / n0);
  r.rates[first].exact = !sample_first;
  r.rates[second].exact = !sample_second;
  if (sample_first) r.rates[first].estimate = totals[0].estimate();
  if (sample_second) r.rates[second].estimate = totals[1].estimate();
  return r;
}

bool power_audit(const SimulationReport& report) {
  if (report.n == 0 || report.empirical_powers.size() != report.power_budgets.size()) return false;
  const double allowance = 1.0 + 5.0 * std::sqrt(2.0 / static_cast<double>(report.n));
  for (std::size_t i = 0; i < report.empirical_powers.size(); ++i) {
    if (report.empirical_powers[i] > report.power_budgets[i] * allowance) return false;
  }
  return true;
}

}  // namespace macamp
