#include "macamp/tradeoff_two_user.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "macamp/parallel.hpp"

namespace macamp {

namespace {

void check_two_user(const ChannelConfig& config, double gamma, double beta) {
  validate(config, 2);
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidArgument("gamma must lie in [0, 1]");
  if (!(beta >= 0.0 && beta <= 1.0)) throw InvalidArgument("beta must lie in [0, 1]");
}

double half_log2(double x) { return 0.5 * std::log2(x); }

// Largest b in [0, 1] with D(gamma, b) <= target, or -1 if none. D is
// non-decreasing in each argument, so bisection suffices.
double max_feasible(const ChannelConfig& c, double fixed, double target, bool vary_beta) {
  auto d = [&](double v) {
    return vary_beta ? distortion_bound(c, fixed, v) : distortion_bound(c, v, fixed);
  };
  const double limit = target + kDistortionSlack;
  if (d(0.0) > limit) return -1.0;
  if (d(1.0) <= limit) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (d(mid) <= limit ? lo : hi) = mid;
  }
  return lo;
}

double cross(const RatePair& o, const RatePair& a, const RatePair& b) {
  return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
}

}  // namespace

std::string_view tag_name(SampleTag tag) {
  switch (tag) {
    case SampleTag::kCornerA1: return "corner-A1";
    case SampleTag::kCornerA2: return "corner-A2";
    case SampleTag::kSingleUser1: return "single-user-1";
    case SampleTag::kSingleUser2: return "single-user-2";
  }
  return "unknown";
}

RateCaps2 rate_caps(const ChannelConfig& config, double gamma, double beta) {
  check_two_user(config, gamma, beta);
  const double n0 = config.noise_var;
  const double m1 = gamma * config.powers[0];
  const double m2 = beta * config.powers[1];
  return {half_log2(1.0 + m1 / n0), half_log2(1.0 + m2 / n0), half_log2(1.0 + (m1 + m2) / n0)};
}

double distortion_bound(const ChannelConfig& config, double gamma, double beta) {
  check_two_user(config, gamma, beta);
  const double p1 = config.powers[0];
  const double p2 = config.powers[1];
  const double q = config.state_var;
  const double a = config.state_coupling;
  const double n0 = config.noise_var;
  const double gbar = 1.0 - gamma;
  const double bbar = 1.0 - beta;
  const double numerator = q * (n0 + gamma * p1 + beta * p2);
  const double denominator = p1 + p2 + a * a * q + n0 + 2.0 * a * std::sqrt(gbar * p1 * q) +
                             2.0 * a * std::sqrt(bbar * p2 * q) +
                             2.0 * std::sqrt(gbar * bbar * p1 * p2);
  return numerator / denominator;
}

CornerPair corner_points(const ChannelConfig& config, double gamma, double beta) {
  check_two_user(config, gamma, beta);
  const double n0 = config.noise_var;
  const double m1 = gamma * config.powers[0];
  const double m2 = beta * config.powers[1];
  CornerPair out;
  out.a1 = {half_log2(1.0 + m1 / n0), half_log2(1.0 + m2 / (m1 + n0))};
  out.a2 = {half_log2(1.0 + m1 / (m2 + n0)), half_log2(1.0 + m2 / n0)};
  return out;
}

std::vector<RatePair> pareto_hull(std::vector<RatePair> points) {
  if (points.empty()) return {};
  std::sort(points.begin(), points.end(), [](const RatePair& a, const RatePair& b) {
    return a.r1 < b.r1 || (a.r1 == b.r1 && a.r2 < b.r2);
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const RatePair& a, const RatePair& b) {
                             return a.r1 == b.r1 && a.r2 == b.r2;
                           }),
               points.end());
  // Upper hull, left to right, dropping collinear points.
  std::vector<RatePair> upper;
  for (const auto& p : points) {
    while (upper.size() >= 2 && cross(upper[upper.size() - 2], upper.back(), p) >= 0.0) {
      upper.pop_back();
    }
    upper.push_back(p);
  }
  // Keep from the highest vertex (ties toward larger R1) to the right end.
  std::size_t top = 0;
  for (std::size_t i = 1; i < upper.size(); ++i) {
    if (upper[i].r2 >= upper[top].r2) top = i;
  }
  std::vector<RatePair> frontier(upper.begin() + static_cast<std::ptrdiff_t>(top), upper.end());
  std::reverse(frontier.begin(), frontier.end());
  return frontier;
}

double CrossSection::r1_max() const { return frontier.empty() ? 0.0 : frontier.front().r1; }

double CrossSection::r2_max() const { return frontier.empty() ? 0.0 : frontier.back().r2; }

std::vector<RatePair> CrossSection::polygon() const {
  std::vector<RatePair> out;
  auto push = [&](RatePair p) {
    if (out.empty() || out.back().r1 != p.r1 || out.back().r2 != p.r2) out.push_back(p);
  };
  push({0.0, 0.0});
  push({r1_max(), 0.0});
  for (const auto& p : frontier) push(p);
  push({0.0, r2_max()});
  if (out.size() > 1 && out.back().r1 == 0.0 && out.back().r2 == 0.0) out.pop_back();
  return out;
}

double CrossSection::r2_at(double r1) const {
  if (frontier.empty() || r1 > r1_max()) return 0.0;
  if (r1 <= frontier.back().r1) return r2_max();
  for (std::size_t i = 0; i + 1 < frontier.size(); ++i) {
    const auto& a = frontier[i];
    const auto& b = frontier[i + 1];
    if (r1 <= a.r1 && r1 >= b.r1) {
      if (a.r1 == b.r1) return std::max(a.r2, b.r2);
      const double t = (a.r1 - r1) / (a.r1 - b.r1);
      return a.r2 + t * (b.r2 - a.r2);
    }
  }
  return frontier.front().r2;
}

double CrossSection::r1_at(double r2) const {
  if (frontier.empty() || r2 > r2_max()) return 0.0;
  if (r2 <= frontier.front().r2) return r1_max();
  for (std::size_t i = 0; i + 1 < frontier.size(); ++i) {
    const auto& a = frontier[i];
    const auto& b = frontier[i + 1];
    if (r2 >= a.r2 && r2 <= b.r2) {
      if (a.r2 == b.r2) return std::max(a.r1, b.r1);
      const double t = (r2 - a.r2) / (b.r2 - a.r2);
      return a.r1 + t * (b.r1 - a.r1);
    }
  }
  return frontier.back().r1;
}

CrossSection cross_section(const ChannelConfig& config, double target_distortion,
                           std::size_t grid_res) {
  validate(config, 2);
  if (grid_res < 2) throw InvalidArgument("grid must be ≥ 2");
  if (!(target_distortion > 0.0 && target_distortion <= config.state_var)) {
    throw InvalidArgument("target distortion must lie in (0, Q]");
  }
  if (target_distortion + kDistortionSlack < distortion_bound(config, 0.0, 0.0)) {
    throw Infeasible("distortion infeasible");
  }

  CrossSection out;
  out.distortion = target_distortion;
  if (target_distortion + kDistortionSlack >= distortion_bound(config, 1.0, 1.0)) {
    const auto c = corner_points(config, 1.0, 1.0);
    out.frontier = pareto_hull({{0.0, 0.0}, c.a1, c.a2});
    return out;
  }

  // Sample the edge of the feasible split set from both axes; every pentagon
  // below the edge is nested in one on it.
  std::vector<RatePair> slots(4 * 2 * grid_res, RatePair{0.0, 0.0});
  parallel_for(2 * grid_res, [&](std::size_t k) {
    const bool sweep_gamma = k < grid_res;
    const double t = static_cast<double>(k % grid_res) / static_cast<double>(grid_res - 1);
    const double other = max_feasible(config, t, target_distortion, sweep_gamma);
    if (other < 0.0) return;
    const double gamma = sweep_gamma ? t : other;
    const double beta = sweep_gamma ? other : t;
    const auto corners = corner_points(config, gamma, beta);
    slots[4 * k] = corners.a1;
    slots[4 * k + 1] = corners.a2;
    slots[4 * k + 2] = {corners.a1.r1, 0.0};
    slots[4 * k + 3] = {0.0, corners.a2.r2};
  });
  slots.push_back({0.0, 0.0});
  out.frontier = pareto_hull(std::move(slots));
  return out;
}

RegionSample surface_samples(const ChannelConfig& config, std::size_t grid_res) {
  validate(config, 2);
  if (grid_res < 2) throw InvalidArgument("grid must be ≥ 2");
  RegionSample samples(grid_res * grid_res * 4);
  const double step = 1.0 / static_cast<double>(grid_res - 1);
  parallel_for(grid_res, [&](std::size_t i) {
    const double gamma = static_cast<double>(i) * step;
    for (std::size_t j = 0; j < grid_res; ++j) {
      const double beta = static_cast<double>(j) * step;
      const double d = distortion_bound(config, gamma, beta);
      const double z = std::max(0.0, std::log2(config.state_var / d));
      const auto corners = corner_points(config, gamma, beta);
      const RatePair pts[4] = {corners.a1, corners.a2, {corners.a1.r1, 0.0}, {0.0, corners.a2.r2}};
      const SampleTag tags[4] = {SampleTag::kCornerA1, SampleTag::kCornerA2,
                                 SampleTag::kSingleUser1, SampleTag::kSingleUser2};
      for (std::size_t k = 0; k < 4; ++k) {
        auto& s = samples[(i * grid_res + j) * 4 + k];
        s.gamma = gamma;
        s.beta = beta;
        s.point = TradeoffPoint{{pts[k].r1, pts[k].r2}, d};
        s.log2_q_over_d = z;
        s.tag = tags[k];
      }
    }
  });
  return samples;
}

}  // namespace macamp
