#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "macamp/channel_model.hpp"

namespace macamp {

// Bit i set means user i (0-based) belongs to the subset.
using UserSet = std::uint32_t;

inline constexpr std::size_t kMaxSubsetUsers = 32;
inline constexpr std::size_t kMaxVertexUsers = 8;

inline UserSet all_users(std::size_t n) {
  return n >= 32 ? ~UserSet{0} : (UserSet{1} << n) - 1;
}

struct SubsetRateCap {
  UserSet subset = 0;
  double cap = 0.0;  // bits per channel use
};

// A corner of the polymatroid. `permutation` is the successive-cancellation
// decoding order: permutation[0] is decoded first and sees every later user as
// noise, the last one sees only noise.
struct PolymatroidVertex {
  std::vector<std::size_t> permutation;
  std::vector<double> rates;
};

// 1/2 log2(1 + sum_{j in subset} gamma_j P_j / noise_var).
SubsetRateCap subset_rate_cap(const ChannelConfig& config, const PowerSplit& split, UserSet subset);

// Minimum mean-squared error of the state for this split:
//   Q (N0 + sum gamma_j P_j) / (N0 + sum gamma_j P_j + (a sqrt(Q) + sum sqrt((1-gamma_j) P_j))^2).
double distortion_bound_n(const ChannelConfig& config, const PowerSplit& split);

// log2(Q / D) for the split, computed without forming D.
double log2_state_gain_n(const ChannelConfig& config, const PowerSplit& split);

// One vertex per decoding order, in lexicographic order of the permutation.
// Throws InvalidArgument above kMaxVertexUsers users.
std::vector<PolymatroidVertex> polymatroid_vertices(const ChannelConfig& config,
                                                    const PowerSplit& split);

// Rates of the vertex reached by a single decoding order, via the chain of
// subset caps along the order.
std::vector<double> vertex_for_order(const ChannelConfig& config, const PowerSplit& split,
                                     const std::vector<std::size_t>& order);

// Largest violation of cap constraints by `rates` (<= 0 means feasible).
double max_cap_violation(const ChannelConfig& config, const PowerSplit& split,
                         const std::vector<double>& rates);

struct SubmodularityReport {
  std::size_t trials = 0;
  double max_violation = 0.0;  // max over pairs of g(A u B) + g(A n B) - g(A) - g(B)
  UserSet worst_a = 0;
  UserSet worst_b = 0;
};

// Samples random subset pairs and measures violation of
// g(A) + g(B) >= g(A u B) + g(A n B) for the subset-cap function g.
SubmodularityReport check_submodular(const ChannelConfig& config, const PowerSplit& split,
                                     std::size_t trials, std::uint64_t seed = 0x5eed);

}  // namespace macamp
