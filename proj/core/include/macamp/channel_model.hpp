#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace macamp {

// Thrown for any precondition or invariant violation on problem data.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One problem instance: Y = sum_i X_i + coupling * S + Z, with S ~ N(0, state_var),
// Z ~ N(0, noise_var) and average power budget powers[i] at sender i.
// state_coupling = 1 is the dirty-paper MAC, 0 is the stateless source model.
struct ChannelConfig {
  std::vector<double> powers;
  double state_var = 1.0;
  double noise_var = 1.0;
  double state_coupling = 1.0;

  std::size_t n_users() const { return powers.size(); }
};

// Per-user fraction of power spent on the message; the remainder amplifies the state.
struct PowerSplit {
  std::vector<double> gammas;

  std::size_t size() const { return gammas.size(); }
  double operator[](std::size_t i) const { return gammas[i]; }
};

// Rates in bits per channel use plus a squared-error distortion.
struct TradeoffPoint {
  std::vector<double> rates;
  double distortion = 0.0;
};

// Returns the config unchanged when every invariant holds; throws InvalidArgument
// with a distinct message for each violation otherwise. `expected_users`, when
// nonzero, is checked against powers.size().
const ChannelConfig& validate(const ChannelConfig& config, std::size_t expected_users = 0);

// Checks split length against the config and that every gamma lies in [0, 1].
void validate_split(const ChannelConfig& config, const PowerSplit& split);

// Removes `user` (0-based) by letting it send sqrt(P_user / Q) * S uncoded. The
// result is an (N-1)-user dirty-paper instance whose state has variance
// (coupling * sqrt(Q) + sqrt(P_user))^2 and coupling 1.
ChannelConfig reduce_uncoded_user(const ChannelConfig& config, std::size_t user);

// Power-split convenience for the two-user case.
inline PowerSplit make_split(double gamma, double beta) { return PowerSplit{{gamma, beta}}; }

}  // namespace macamp
