#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "macamp/channel_model.hpp"

namespace macamp {

struct RatePair {
  double r1 = 0.0;
  double r2 = 0.0;
};

// Pentagon caps for one power split, bits per channel use.
struct RateCaps2 {
  double r1_cap = 0.0;
  double r2_cap = 0.0;
  double rsum_cap = 0.0;
};

// Dominant-face endpoints. a1 decodes user 2 first (user 1 sees only noise),
// a2 decodes user 1 first.
struct CornerPair {
  RatePair a1;
  RatePair a2;
};

enum class SampleTag { kCornerA1, kCornerA2, kSingleUser1, kSingleUser2 };

std::string_view tag_name(SampleTag tag);

struct SurfaceSample {
  double gamma = 0.0;
  double beta = 0.0;
  TradeoffPoint point;
  double log2_q_over_d = 0.0;
  SampleTag tag = SampleTag::kCornerA1;
};

using RegionSample = std::vector<SurfaceSample>;

RateCaps2 rate_caps(const ChannelConfig& config, double gamma, double beta);

// Smallest achievable distortion for the split (gamma, beta), written in the
// expanded two-user form with cross terms; valid for any state coupling.
double distortion_bound(const ChannelConfig& config, double gamma, double beta);

CornerPair corner_points(const ChannelConfig& config, double gamma, double beta);

// Pareto boundary of the rate region at a fixed distortion.
struct CrossSection {
  double distortion = 0.0;
  // Upper-right boundary, R1 decreasing and R2 increasing.
  std::vector<RatePair> frontier;

  double r1_max() const;
  double r2_max() const;
  // Closed region outline: origin, then (r1_max, 0), the frontier, and
  // (0, r2_max), with duplicates removed.
  std::vector<RatePair> polygon() const;
  // Upper envelope R2 as a function of R1 (linear between frontier vertices);
  // 0 beyond r1_max.
  double r2_at(double r1) const;
  double r1_at(double r2) const;
};

// Thrown when no split meets the requested distortion.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDistortionSlack = 1e-12;

// Sweeps `grid_res` values of gamma (and of beta) along the edge of the
// feasible split set {D(gamma, beta) <= target}, gathers corner and axis points
// of the pentagons found there, and returns the Pareto part of their convex hull.
CrossSection cross_section(const ChannelConfig& config, double target_distortion,
                           std::size_t grid_res = 512);

// grid_res x grid_res grid over (gamma, beta), four tagged samples per cell in
// row-major order (gamma outer).
RegionSample surface_samples(const ChannelConfig& config, std::size_t grid_res);

// Upper-right convex hull of a point cloud; shared with the brute-force oracle.
std::vector<RatePair> pareto_hull(std::vector<RatePair> points);

}  // namespace macamp
