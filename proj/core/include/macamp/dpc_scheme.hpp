#pragma once

#include <cstddef>
#include <vector>

#include "macamp/channel_model.hpp"
#include "macamp/tradeoff_two_user.hpp"

namespace macamp {

// Coefficients of the power-split + dirty-paper + linear-estimate scheme.
// Indices are user indices (0-based); decoding_order[0] is decoded first.
struct DpcParameters {
  std::vector<std::size_t> decoding_order;
  // Effective state S' = state_scale * S seen by the message layer.
  double state_scale = 0.0;
  // U_k = M_k + alpha_coeffs[k] * (known state at user k's decoding stage).
  std::vector<double> alpha_coeffs;
  std::vector<double> message_vars;
  std::vector<double> amplification_gains;
  double mmse_coeff = 0.0;
};

// Second-order statistics of (S, Y) under the scheme.
struct SchemeMoments {
  double var_s = 0.0;
  double var_y = 0.0;
  double cov_sy = 0.0;
};

SchemeMoments scheme_moments(const ChannelConfig& config, const PowerSplit& split);

// sqrt((1 - gamma_i) P_i / Q) for each user.
std::vector<double> amplification_gains(const ChannelConfig& config, const PowerSplit& split);

// coupling + sum of amplification gains.
double state_scale(const ChannelConfig& config, const PowerSplit& split);

// Two-user parameters for decoding order {0,1} or {1,0}. Requires coupling 1.
DpcParameters two_user_dpc_params(const ChannelConfig& config, double gamma, double beta,
                                  const std::vector<std::size_t>& order);

// c = Cov(S, Y) / Var(Y), so that S_hat = c Y is the linear MMSE estimate.
double lmmse_coefficient(const ChannelConfig& config, double gamma, double beta);
double lmmse_coefficient_n(const ChannelConfig& config, const PowerSplit& split);

// E[(S - c Y)^2] for an arbitrary coefficient c.
double estimate_mse(const ChannelConfig& config, const PowerSplit& split, double c);

// The linear-estimate coefficient exactly as printed in the source derivation,
// with sqrt(gamma P_1 Q) in the numerator. Kept for comparison only; it differs
// from the MMSE coefficient except when the split makes both agree.
double printed_lmmse_coefficient(const ChannelConfig& config, double gamma, double beta);

// Successive-cancellation rates: the user decoded at position k sees the
// message power of every later user as noise.
std::vector<double> n_user_sc_rates(const ChannelConfig& config, const PowerSplit& split,
                                    const std::vector<std::size_t>& order);

// lambda_ts * A1 + (1 - lambda_ts) * A2.
RatePair time_share(const CornerPair& corners, double lambda_ts);

}  // namespace macamp
