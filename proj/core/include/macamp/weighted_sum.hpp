#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "macamp/channel_model.hpp"

namespace macamp {

// Weights of the objective sum_i mu_i R_i + (lambda / 2) log2(Q / D).
struct WeightVector {
  std::vector<double> mus;
  double lambda = 0.0;
};

// Weights with users sorted by non-increasing mu and scaled so the smallest
// positive mu is 1 (or lambda is 1 when every mu is zero).
struct NormalizedWeights {
  WeightVector weights;
  // original_index[k] is the caller's index of normalized user k.
  std::vector<std::size_t> original_index;
  // raw objective = scale * normalized objective.
  double scale = 1.0;
};

NormalizedWeights normalize_weights(const WeightVector& raw);

struct Regime {
  enum class Tag { kCase1, kCase2, kCase3 };
  Tag tag = Tag::kCase1;
  // 1-based pivot user j for Case 3: mu_j <= lambda <= mu_{j-1}; 0 otherwise.
  std::size_t pivot = 0;
};

std::string_view regime_name(Regime::Tag tag);

// Boundary policy: Case 2 when lambda >= mu_1; otherwise Case 1 when
// lambda <= 1 and every mu is positive; otherwise Case 3 with the smallest j
// such that mu_j <= lambda.
Regime classify_regime(const WeightVector& normalized);

struct OptimumReport {
  double value = 0.0;             // objective at the caller's weights, bits
  double normalized_value = 0.0;  // objective at the normalized weights
  PowerSplit split;               // caller's user indexing
  Regime regime;
  double distortion = 0.0;
  // Achieving vertex: decode in order of non-decreasing mu (first entry first).
  std::vector<std::size_t> decoding_order;
  std::vector<double> rates;
  // Users whose mu ties a neighbour in the order; any time-sharing between
  // their decoding orders is equally optimal.
  bool rate_split_unique = true;
  std::size_t sweeps = 0;
  std::string corner;
};

// Thrown by maximize_split when the sweep cap is hit; carries the best iterate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, OptimumReport best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const OptimumReport& best() const { return best_; }

 private:
  OptimumReport best_;
};

// Objective sum_i (mu_i - mu_{i+1}) Rsum(gamma_1..gamma_i) + (lambda/2) log2(Q/D),
// mu_{N+1} = 0, for weights and split given in the same (normalized) user order.
double weighted_objective(const ChannelConfig& config, const WeightVector& normalized,
                          const PowerSplit& split);

// Same objective evaluated at the caller's (unsorted, unscaled) weights by
// maximizing over decoding orders; independent of normalization.
double raw_weighted_objective(const ChannelConfig& config, const WeightVector& raw,
                              const PowerSplit& split);

// Upper bound T on the weighted objective over the whole region, by regime.
OptimumReport converse_bound(const ChannelConfig& config, const NormalizedWeights& weights);
OptimumReport converse_bound(const ChannelConfig& config, const WeightVector& raw);

struct MaximizerOptions {
  std::size_t max_sweeps = 200;
  double split_tolerance = 1e-8;
  double line_tolerance = 1e-11;
};

// Concave maximization of the Case 1 objective over [0,1]^N by cyclic
// coordinate golden-section search with a pattern step after each sweep.
// Requires normalized lambda <= 1.
OptimumReport maximize_split(const ChannelConfig& config, const NormalizedWeights& weights,
                             const MaximizerOptions& options = {});

// Exhaustive maximum of the objective over a resolution^N grid of splits
// (N <= 4). Ties go to the lexicographically smallest split.
OptimumReport grid_oracle(const ChannelConfig& config, const WeightVector& raw,
                          std::size_t resolution);

}  // namespace macamp
