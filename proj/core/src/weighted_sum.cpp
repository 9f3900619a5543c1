#include "macamp/weighted_sum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "macamp/parallel.hpp"
#include "macamp/tradeoff_n_user.hpp"

namespace macamp {

namespace {

void check_weights(const WeightVector& w) {
  if (w.mus.empty()) throw InvalidArgument("weight vector has no user weights");
  for (double m : w.mus) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw InvalidArgument("weights must be non-negative");
  }
  if (!(w.lambda >= 0.0) || !std::isfinite(w.lambda)) {
    throw InvalidArgument("lambda must be non-negative");
  }
}

ChannelConfig permuted(const ChannelConfig& config, const std::vector<std::size_t>& index) {
  ChannelConfig out = config;
  for (std::size_t k = 0; k < index.size(); ++k) out.powers[k] = config.powers[index[k]];
  return out;
}

struct LineResult {
  double x;
  double f;
};

// Golden-section search for the maximum of a unimodal g on [a, b]; returns
// the best point evaluated, endpoints included.
LineResult golden_max(const std::function<double(double)>& g, double a, double b, double tol) {
  static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  LineResult best{a, g(a)};
  auto consider = [&](double x, double f) {
    if (f > best.f) best = {x, f};
  };
  consider(b, g(b));
  double u = b - kInvPhi * (b - a);
  double v = a + kInvPhi * (b - a);
  double fu = g(u);
  double fv = g(v);
  consider(u, fu);
  consider(v, fv);
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    if (fu < fv) {
      a = u;
      u = v;
      fu = fv;
      v = a + kInvPhi * (b - a);
      fv = g(v);
      consider(v, fv);
    } else {
      b = v;
      v = u;
      fv = fu;
      u = b - kInvPhi * (b - a);
      fu = g(u);
      consider(u, fu);
    }
  }
  return best;
}

struct SplitSearch {
  std::vector<double> split;
  double value = 0.0;
  std::size_t sweeps = 0;
  bool converged = false;
};

// Maximizes the normalized objective over the first `active` coordinates with
// the rest pinned at zero.
SplitSearch coordinate_ascent(const ChannelConfig& pc, const WeightVector& w, std::size_t active,
                              const MaximizerOptions& opt) {
  const std::size_t n = pc.n_users();
  PowerSplit x{std::vector<double>(n, 0.0)};
  for (std::size_t i = 0; i < active; ++i) x.gammas[i] = 0.5;
  auto f = [&](const PowerSplit& s) { return weighted_objective(pc, w, s); };
  SplitSearch result;
  double fx = f(x);
  if (active == 0) {
    result.split = x.gammas;
    result.value = fx;
    result.converged = true;
    return result;
  }
  for (std::size_t sweep = 1; sweep <= opt.max_sweeps; ++sweep) {
    const std::vector<double> before = x.gammas;
    const double f_before = fx;
    for (std::size_t i = 0; i < active; ++i) {
      PowerSplit trial = x;
      auto line = golden_max(
          [&](double t) {
            trial.gammas[i] = t;
            return f(trial);
          },
          0.0, 1.0, opt.line_tolerance);
      if (line.f > fx) {
        x.gammas[i] = line.x;
        fx = line.f;
      }
    }
    // Pattern step along the sweep displacement.
    double dmax = 0.0;
    double tmax = std::numeric_limits<double>::infinity();
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 0; i < active; ++i) {
      d[i] = x.gammas[i] - before[i];
      dmax = std::max(dmax, std::abs(d[i]));
      if (d[i] > 0.0) tmax = std::min(tmax, (1.0 - x.gammas[i]) / d[i]);
      if (d[i] < 0.0) tmax = std::min(tmax, -x.gammas[i] / d[i]);
    }
    if (dmax > 0.0 && tmax > 0.0 && std::isfinite(tmax)) {
      PowerSplit trial = x;
      auto line = golden_max(
          [&](double t) {
            for (std::size_t i = 0; i < active; ++i) {
              trial.gammas[i] = std::clamp(x.gammas[i] + t * d[i], 0.0, 1.0);
            }
            return f(trial);
          },
          0.0, tmax, opt.line_tolerance / dmax);
      if (line.f > fx) {
        for (std::size_t i = 0; i < active; ++i) {
          x.gammas[i] = std::clamp(x.gammas[i] + line.x * d[i], 0.0, 1.0);
        }
        fx = line.f;
      }
    }
    double step = 0.0;
    for (std::size_t i = 0; i < active; ++i) step = std::max(step, std::abs(x.gammas[i] - before[i]));
    result.sweeps = sweep;
    const bool flat = fx - f_before <= 4.0 * std::numeric_limits<double>::epsilon() *
                                           std::max(1.0, std::abs(fx));
    if (step < 0.1 * opt.split_tolerance || flat) {
      result.converged = true;
      break;
    }
  }
  result.split = x.gammas;
  result.value = fx;
  return result;
}

OptimumReport make_report(const ChannelConfig& config, const NormalizedWeights& nw,
                          const std::vector<double>& normalized_split, Regime regime,
                          std::size_t sweeps) {
  const std::size_t n = config.n_users();
  OptimumReport r;
  r.regime = regime;
  r.sweeps = sweeps;
  r.split.gammas.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) r.split.gammas[nw.original_index[k]] = normalized_split[k];
  const ChannelConfig pc = permuted(config, nw.original_index);
  r.normalized_value = weighted_objective(pc, nw.weights, PowerSplit{normalized_split});
  r.value = raw_weighted_objective(config, WeightVector{[&] {
                                     std::vector<double> raw(n);
                                     for (std::size_t k = 0; k < n; ++k) {
                                       raw[nw.original_index[k]] = nw.weights.mus[k] * nw.scale;
                                     }
                                     return raw;
                                   }(),
                                                                nw.weights.lambda * nw.scale},
                                   r.split);
  r.distortion = distortion_bound_n(config, r.split);
  for (std::size_t k = n; k-- > 0;) r.decoding_order.push_back(nw.original_index[k]);
  r.rates = vertex_for_order(config, r.split, r.decoding_order);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (nw.weights.mus[k] == nw.weights.mus[k + 1] && nw.weights.mus[k] > 0.0) {
      r.rate_split_unique = false;
    }
  }
  std::ostringstream os;
  os << "vertex with decoding order (";
  for (std::size_t k = 0; k < n; ++k) os << (k ? "," : "") << r.decoding_order[k] + 1;
  os << ")";
  if (!r.rate_split_unique) os << "; time-sharing across orders of tied weights is equally optimal";
  r.corner = os.str();
  return r;
}

}  // namespace

NormalizedWeights normalize_weights(const WeightVector& raw) {
  check_weights(raw);
  const bool any_mu = std::any_of(raw.mus.begin(), raw.mus.end(), [](double m) { return m > 0; });
  if (!any_mu && raw.lambda == 0.0) throw InvalidArgument("all-zero weight vector");
  NormalizedWeights out;
  out.original_index.resize(raw.mus.size());
  std::iota(out.original_index.begin(), out.original_index.end(), std::size_t{0});
  std::stable_sort(out.original_index.begin(), out.original_index.end(),
                   [&](std::size_t a, std::size_t b) { return raw.mus[a] > raw.mus[b]; });
  double scale = raw.lambda;
  if (any_mu) {
    scale = std::numeric_limits<double>::infinity();
    for (double m : raw.mus) {
      if (m > 0.0) scale = std::min(scale, m);
    }
  }
  out.scale = scale;
  out.weights.mus.resize(raw.mus.size());
  for (std::size_t k = 0; k < raw.mus.size(); ++k) {
    out.weights.mus[k] = raw.mus[out.original_index[k]] / scale;
  }
  out.weights.lambda = raw.lambda / scale;
  return out;
}

std::string_view regime_name(Regime::Tag tag) {
  switch (tag) {
    case Regime::Tag::kCase1: return "Case1";
    case Regime::Tag::kCase2: return "Case2";
    case Regime::Tag::kCase3: return "Case3";
  }
  return "unknown";
}

Regime classify_regime(const WeightVector& w) {
  check_weights(w);
  const auto& mu = w.mus;
  if (w.lambda >= mu.front()) return {Regime::Tag::kCase2, 0};
  if (w.lambda <= 1.0 && mu.back() > 0.0) return {Regime::Tag::kCase1, 0};
  for (std::size_t j = 1; j < mu.size(); ++j) {
    if (mu[j] <= w.lambda) return {Regime::Tag::kCase3, j + 1};
  }
  // Unreachable for normalized weights.
  return {Regime::Tag::kCase1, 0};
}

double weighted_objective(const ChannelConfig& config, const WeightVector& w,
                          const PowerSplit& split) {
  validate_split(config, split);
  const std::size_t n = config.n_users();
  if (w.mus.size() != n) throw InvalidArgument("weight vector length mismatch");
  double value = 0.0;
  double prefix = 0.0;
  double amplitude = config.state_coupling * std::sqrt(config.state_var);
  for (std::size_t i = 0; i < n; ++i) {
    prefix += split[i] * config.powers[i];
    amplitude += std::sqrt((1.0 - split[i]) * config.powers[i]);
    const double next_mu = i + 1 < n ? w.mus[i + 1] : 0.0;
    const double coeff = w.mus[i] - next_mu;
    if (coeff != 0.0) value += coeff * 0.5 * std::log2(1.0 + prefix / config.noise_var);
  }
  const double residual = config.noise_var + prefix;
  if (w.lambda != 0.0) {
    value += 0.5 * w.lambda * std::log2(1.0 + amplitude * amplitude / residual);
  }
  return value;
}

double raw_weighted_objective(const ChannelConfig& config, const WeightVector& raw,
                              const PowerSplit& split) {
  validate_split(config, split);
  const std::size_t n = config.n_users();
  if (raw.mus.size() != n) throw InvalidArgument("weight vector length mismatch");
  // Best vertex for a linear rate objective decodes the smallest weight first.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return raw.mus[a] < raw.mus[b]; });
  double later = 0.0;
  double rate_part = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    const std::size_t u = order[k];
    const double m = split[u] * config.powers[u];
    rate_part += raw.mus[u] * 0.5 * std::log2(1.0 + m / (config.noise_var + later));
    later += m;
  }
  const double d = distortion_bound_n(config, split);
  return rate_part + 0.5 * raw.lambda * std::log2(config.state_var / d);
}

OptimumReport maximize_split(const ChannelConfig& config, const NormalizedWeights& nw,
                             const MaximizerOptions& options) {
  validate(config, nw.weights.mus.size());
  const auto& mu = nw.weights.mus;
  if (nw.weights.lambda > 1.0 + 1e-12) {
    throw InvalidArgument("maximize_split requires normalized lambda <= 1");
  }
  const ChannelConfig pc = permuted(config, nw.original_index);
  const auto search = coordinate_ascent(pc, nw.weights, mu.size(), options);
  auto report = make_report(config, nw, search.split, {Regime::Tag::kCase1, 0}, search.sweeps);
  if (!search.converged) {
    throw ConvergenceError("split search did not converge within the sweep cap",
                           std::move(report));
  }
  return report;
}

OptimumReport converse_bound(const ChannelConfig& config, const NormalizedWeights& nw) {
  validate(config, nw.weights.mus.size());
  const Regime regime = classify_regime(nw.weights);
  const std::size_t n = config.n_users();
  const ChannelConfig pc = permuted(config, nw.original_index);
  switch (regime.tag) {
    case Regime::Tag::kCase2:
      // Every sender amplifies the state with full power.
      return make_report(config, nw, std::vector<double>(n, 0.0), regime, 0);
    case Regime::Tag::kCase1: {
      auto report = maximize_split(config, nw);
      report.regime = regime;
      return report;
    }
    case Regime::Tag::kCase3: {
      // Users pivot..N send the state uncoded; the remaining pivot-1 users
      // face a Case 1 problem (lambda / mu_{pivot-1} <= 1).
      const std::size_t active = regime.pivot - 1;
      const auto search = coordinate_ascent(pc, nw.weights, active, MaximizerOptions{});
      auto report = make_report(config, nw, search.split, regime, search.sweeps);
      if (!search.converged) {
        throw ConvergenceError("split search did not converge within the sweep cap",
                               std::move(report));
      }
      return report;
    }
  }
  throw InvalidArgument("unknown regime");
}

OptimumReport converse_bound(const ChannelConfig& config, const WeightVector& raw) {
  return converse_bound(config, normalize_weights(raw));
}

OptimumReport grid_oracle(const ChannelConfig& config, const WeightVector& raw,
                          std::size_t resolution) {
  validate(config, raw.mus.size());
  check_weights(raw);
  const std::size_t n = config.n_users();
  if (n > 4) throw InvalidArgument("grid oracle limited to N=4");
  if (resolution < 2) throw InvalidArgument("grid resolution must be ≥ 2");

  // Decode by non-decreasing weight; the first-decoded user is the innermost axis.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return raw.mus[a] < raw.mus[b]; });
  std::vector<double> grid(resolution);
  for (std::size_t k = 0; k < resolution; ++k) {
    grid[k] = static_cast<double>(k) / static_cast<double>(resolution - 1);
  }
  const double n0 = config.noise_var;
  const double base_amp = config.state_coupling * std::sqrt(config.state_var);
  const std::size_t inner = order[0];
  const double p_inner = config.powers[inner];
  const double mu_inner = raw.mus[inner];
  std::vector<double> inner_msg(resolution), inner_amp(resolution);
  for (std::size_t k = 0; k < resolution; ++k) {
    inner_msg[k] = grid[k] * p_inner;
    inner_amp[k] = std::sqrt((1.0 - grid[k]) * p_inner);
  }

  std::size_t outer_cells = 1;
  for (std::size_t k = 1; k < n; ++k) outer_cells *= resolution;

  struct Best {
    double value = -std::numeric_limits<double>::infinity();
    std::vector<double> split;
  };
  auto better = [](double v, const std::vector<double>& s, const Best& b) {
    return v > b.value || (v == b.value && !b.split.empty() && s < b.split);
  };

  const std::size_t chunks = std::min<std::size_t>(outer_cells, 64);
  std::vector<Best> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = outer_cells * c / chunks;
    const std::size_t end = outer_cells * (c + 1) / chunks;
    Best& best = partial[c];
    std::vector<double> split(n, 0.0);
    for (std::size_t cell = begin; cell < end; ++cell) {
      // Decode the outer cell index into grid indices for order[1..].
      std::size_t rem = cell;
      double tail_msg = 0.0;
      double amp = base_amp;
      double rate_part = 0.0;
      for (std::size_t k = n; k-- > 1;) {
        const std::size_t u = order[k];
        const double g = grid[rem % resolution];
        rem /= resolution;
        split[u] = g;
        const double m = g * config.powers[u];
        rate_part += raw.mus[u] * 0.5 * std::log2((n0 + tail_msg + m) / (n0 + tail_msg));
        tail_msg += m;
        amp += std::sqrt((1.0 - g) * config.powers[u]);
      }
      const double log_tail = std::log2(n0 + tail_msg);
      for (std::size_t k = 0; k < resolution; ++k) {
        const double residual = n0 + tail_msg + inner_msg[k];
        const double a = amp + inner_amp[k];
        const double log_res = std::log2(residual);
        const double value = rate_part + 0.5 * mu_inner * (log_res - log_tail) +
                             0.5 * raw.lambda * (std::log2(residual + a * a) - log_res);
        split[inner] = grid[k];
        if (better(value, split, best)) {
          best.value = value;
          best.split = split;
        }
      }
    }
  });
  Best best;
  for (const auto& p : partial) {
    if (!p.split.empty() && (best.split.empty() || better(p.value, p.split, best))) best = p;
  }

  const auto nw = normalize_weights(raw);
  std::vector<double> normalized_split(n);
  for (std::size_t k = 0; k < n; ++k) normalized_split[k] = best.split[nw.original_index[k]];
  auto report = make_report(config, nw, normalized_split, classify_regime(nw.weights), 0);
  report.value = best.value;
  report.corner = "grid point; " + report.corner;
  return report;
}

}  // namespace macamp
