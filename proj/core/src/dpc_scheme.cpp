#include "macamp/dpc_scheme.hpp"

#include <cmath>

namespace macamp {

namespace {

void check_order(const std::vector<std::size_t>& order, std::size_t n) {
  if (order.size() != n) throw InvalidArgument("invalid order: wrong length");
  std::vector<bool> seen(n, false);
  for (auto u : order) {
    if (u >= n || seen[u]) throw InvalidArgument("invalid order: not a permutation");
    seen[u] = true;
  }
}

}  // namespace

std::vector<double> amplification_gains(const ChannelConfig& config, const PowerSplit& split) {
  validate(config);
  validate_split(config, split);
  std::vector<double> gains(config.n_users());
  for (std::size_t i = 0; i < gains.size(); ++i) {
    gains[i] = std::sqrt((1.0 - split[i]) * config.powers[i] / config.state_var);
  }
  return gains;
}

double state_scale(const ChannelConfig& config, const PowerSplit& split) {
  double scale = config.state_coupling;
  for (double g : amplification_gains(config, split)) scale += g;
  return scale;
}

SchemeMoments scheme_moments(const ChannelConfig& config, const PowerSplit& split) {
  const double scale = state_scale(config, split);
  double message = 0.0;
  for (std::size_t i = 0; i < config.n_users(); ++i) message += split[i] * config.powers[i];
  SchemeMoments m;
  m.var_s = config.state_var;
  m.cov_sy = scale * config.state_var;
  m.var_y = message + scale * scale * config.state_var + config.noise_var;
  return m;
}

double lmmse_coefficient_n(const ChannelConfig& config, const PowerSplit& split) {
  const auto m = scheme_moments(config, split);
  return m.cov_sy / m.var_y;
}

double lmmse_coefficient(const ChannelConfig& config, double gamma, double beta) {
  validate(config, 2);
  return lmmse_coefficient_n(config, make_split(gamma, beta));
}

double estimate_mse(const ChannelConfig& config, const PowerSplit& split, double c) {
  const auto m = scheme_moments(config, split);
  return m.var_s - 2.0 * c * m.cov_sy + c * c * m.var_y;
}

double printed_lmmse_coefficient(const ChannelConfig& config, double gamma, double beta) {
  validate(config, 2);
  const double p1 = config.powers[0];
  const double p2 = config.powers[1];
  const double q = config.state_var;
  const double gbar = 1.0 - gamma;
  const double bbar = 1.0 - beta;
  const double num = q + std::sqrt(gamma * p1 * q) + std::sqrt(beta * p2 * q);
  const double den = p1 + p2 + q + config.noise_var + 2.0 * std::sqrt(gbar * p1 * q) +
                     2.0 * std::sqrt(bbar * p2 * q) + 2.0 * std::sqrt(gbar * bbar * p1 * p2);
  return num / den;
}

DpcParameters two_user_dpc_params(const ChannelConfig& config, double gamma, double beta,
                                  const std::vector<std::size_t>& order) {
  validate(config, 2);
  if (config.state_coupling != 1.0) {
    throw InvalidArgument("two-user DPC parameters require state_coupling = 1");
  }
  check_order(order, 2);
  const PowerSplit split = make_split(gamma, beta);
  validate_split(config, split);
  DpcParameters p;
  p.decoding_order = order;
  p.message_vars = {gamma * config.powers[0], beta * config.powers[1]};
  p.amplification_gains = amplification_gains(config, split);
  p.state_scale = state_scale(config, split);
  p.mmse_coeff = lmmse_coefficient_n(config, split);
  // First-decoded user treats the other message as noise; the second sees
  // only noise after the first codeword is removed.
  const std::size_t first = order[0];
  const std::size_t second = order[1];
  const double n0 = config.noise_var;
  const double m_first = p.message_vars[first];
  const double m_second = p.message_vars[second];
  p.alpha_coeffs.assign(2, 0.0);
  p.alpha_coeffs[first] = m_first / (m_first + m_second + n0);
  p.alpha_coeffs[second] = m_second / (m_second + n0);
  return p;
}

std::vector<double> n_user_sc_rates(const ChannelConfig& config, const PowerSplit& split,
                                    const std::vector<std::size_t>& order) {
  validate(config);
  validate_split(config, split);
  check_order(order, config.n_users());
  std::vector<double> rates(config.n_users(), 0.0);
  double later = 0.0;
  for (std::size_t k = order.size(); k-- > 0;) {
    const std::size_t u = order[k];
    const double m = split[u] * config.powers[u];
    rates[u] = 0.5 * std::log2(1.0 + m / (config.noise_var + later));
    later += m;
  }
  return rates;
}

RatePair time_share(const CornerPair& corners, double lambda_ts) {
  if (!(lambda_ts >= 0.0 && lambda_ts <= 1.0)) {
    throw InvalidArgument("time-sharing parameter must lie in [0, 1]");
  }
  return {lambda_ts * corners.a1.r1 + (1.0 - lambda_ts) * corners.a2.r1,
          lambda_ts * corners.a1.r2 + (1.0 - lambda_ts) * corners.a2.r2};
}

}  // namespace macamp
