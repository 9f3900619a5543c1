#include <doctest.h>

#include <cmath>
#include <random>

#include "macamp/dpc_scheme.hpp"
#include "macamp/tradeoff_n_user.hpp"
#include "macamp/tradeoff_two_user.hpp"
#include "macamp/verify.hpp"
#include "macamp/weighted_sum.hpp"
#include "oracle.hpp"

using namespace macamp;

namespace {

const ChannelConfig kFig3{{2.0, 2.0}, 1.0, 1.0, 1.0};

// Weighted objective written out for two users: sort by mu, SC decode the
// smaller-weight user first, add the distortion term.
double objective2(const ChannelConfig& c, double mu1, double mu2, double lambda, double g,
                  double b) {
  const auto caps = rate_caps(c, g, b);
  const double gain = std::log2(c.state_var / distortion_bound(c, g, b));
  const double r_hi = mu1 >= mu2 ? caps.r1_cap : caps.r2_cap;
  const double hi = std::max(mu1, mu2);
  const double lo = std::min(mu1, mu2);
  return (hi - lo) * r_hi + lo * caps.rsum_cap + 0.5 * lambda * gain;
}

}  // namespace

TEST_CASE("normalize_weights sorts and scales by the smallest positive weight") {
  auto n = normalize_weights({{1, 2}, 0.6});
  CHECK(n.weights.mus == std::vector<double>{2, 1});
  CHECK(n.weights.lambda == doctest::Approx(0.6));
  CHECK(n.original_index == std::vector<std::size_t>{1, 0});

  n = normalize_weights({{3, 6}, 1.2});
  CHECK(n.weights.mus == std::vector<double>{2, 1});
  CHECK(n.weights.lambda == doctest::Approx(0.4));
  CHECK(n.scale == doctest::Approx(3.0));

  n = normalize_weights({{1, 1}, 0.7});
  CHECK(n.weights.mus == std::vector<double>{1, 1});
  CHECK(n.weights.lambda == doctest::Approx(0.7));

  n = normalize_weights({{0, 4}, 2});
  CHECK(n.weights.mus == std::vector<double>{1, 0});
  CHECK(n.weights.lambda == doctest::Approx(0.5));

  CHECK_THROWS_WITH_AS(normalize_weights({{0, 0}, 0}), "all-zero weight vector", InvalidArgument);
  CHECK_THROWS_AS(normalize_weights({{-1, 1}, 0}), InvalidArgument);
}

TEST_CASE("regime classification") {
  CHECK(classify_regime({{2, 1}, 0.5}).tag == Regime::Tag::kCase1);
  CHECK(classify_regime({{2, 1}, 3}).tag == Regime::Tag::kCase2);
  const auto r = classify_regime({{2, 1}, 1.5});
  CHECK(r.tag == Regime::Tag::kCase3);
  CHECK(r.pivot == 2u);
  CHECK(classify_regime({{4, 2, 1}, 3}).pivot == 2u);
  CHECK(classify_regime({{4, 2, 1}, 1.5}).pivot == 3u);
}

TEST_CASE("converse bound examples") {
  SUBCASE("lambda above every weight: full amplification") {
    const auto r = converse_bound(kFig3, WeightVector{{1, 1}, 2});
    CHECK(r.regime.tag == Regime::Tag::kCase2);
    CHECK(r.value == doctest::Approx(std::log2(10 + 4 * std::sqrt(2.0))).epsilon(1e-12));
    CHECK(r.value == doctest::Approx(3.9686).epsilon(1e-4));
    CHECK(r.split.gammas == std::vector<double>{0, 0});
  }
  SUBCASE("rates only") {
    const auto r = converse_bound(kFig3, WeightVector{{1, 1}, 0});
    CHECK(r.value == doctest::Approx(0.5 * std::log2(5.0)).epsilon(1e-9));
    CHECK(r.split.gammas[0] == doctest::Approx(1.0));
    CHECK(r.split.gammas[1] == doctest::Approx(1.0));
  }
  SUBCASE("continuity at lambda = mu") {
    const double mu = 2.5;
    const auto below = converse_bound(kFig3, WeightVector{{mu, 1}, mu * (1 - 1e-10)});
    const auto at = converse_bound(kFig3, WeightVector{{mu, 1}, mu});
    CHECK(below.regime.tag == Regime::Tag::kCase3);
    CHECK(at.regime.tag == Regime::Tag::kCase2);
    CHECK(std::abs(below.value - at.value) <= 1e-8);
  }
  SUBCASE("report is in the caller's user order") {
    const auto r = converse_bound(kFig3, WeightVector{{1, 3}, 0});
    CHECK(r.rates[1] == doctest::Approx(0.5 * std::log2(3.0)));
    CHECK(r.rates[0] == doctest::Approx(0.5 * std::log2(5.0 / 3.0)));
  }
}

TEST_CASE("maximize_split agrees with a dense scan and the grid oracle") {
  SUBCASE("lambda = 1, equal weights") {
    const auto r = converse_bound(kFig3, WeightVector{{1, 1}, 1});
    double best = -1;
    const int res = 2048;
    for (int i = 0; i < res; ++i) {
      for (int j = 0; j < res; ++j) {
        best = std::max(best, objective2(kFig3, 1, 1, 1, i / (res - 1.0), j / (res - 1.0)));
      }
    }
    CHECK(r.value >= best - 1e-12);
    CHECK(r.value - best <= 1e-4);
  }
  SUBCASE("mu = (2,1), lambda = 0.5 at oracle resolution 1024") {
    const WeightVector w{{2, 1}, 0.5};
    const auto r = converse_bound(kFig3, w);
    const auto o = grid_oracle(kFig3, w, 1024);
    CHECK(o.value <= r.value + 1e-6);
    CHECK(std::abs(o.value - r.value) <= 1e-4);
    CHECK(o.value == doctest::Approx(objective2(kFig3, 2, 1, 0.5, o.split[0], o.split[1])));
  }
  SUBCASE("lambda = 0 drives every split to one") {
    const auto r = converse_bound(ChannelConfig{{1, 2, 3}, 1, 1, 1}, WeightVector{{3, 2, 1}, 0});
    for (double g : r.split.gammas) CHECK(g == doctest::Approx(1.0));
  }
  SUBCASE("oracle refinement is monotone") {
    const WeightVector w{{1.3, 1}, 0.8};
    double prev = -1;
    for (std::size_t res : {9u, 17u, 33u, 65u}) {
      const double v = grid_oracle(kFig3, w, res).value;
      CHECK(v >= prev - 1e-15);
      prev = v;
    }
  }
  SUBCASE("oracle limits") {
    const ChannelConfig five{{1, 1, 1, 1, 1}, 1, 1, 1};
    CHECK_THROWS_AS(grid_oracle(five, WeightVector{{1, 1, 1, 1, 1}, 0.5}, 4), InvalidArgument);
  }
}

TEST_CASE("objective is midpoint concave in Case 1 along evaluated pairs") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + t % 3;
    verify::Rng vr(t);
    const auto c = verify::random_config(vr, n);
    auto w = verify::random_normalized_weights(vr, n, 0.01, 0.99);
    const auto a = verify::random_split(vr, n);
    const auto b = verify::random_split(vr, n);
    PowerSplit m;
    for (std::size_t i = 0; i < n; ++i) m.gammas.push_back(0.5 * (a[i] + b[i]));
    const double mid = weighted_objective(c, w, m);
    const double chord = 0.5 * (weighted_objective(c, w, a) + weighted_objective(c, w, b));
    CHECK(mid >= chord - 1e-12);
  }
}

TEST_CASE("raw and normalized objectives differ by the normalization scale") {
  const WeightVector raw{{3, 6}, 1.2};
  const auto nw = normalize_weights(raw);
  const auto s = make_split(0.3, 0.8);
  PowerSplit sorted{{s[nw.original_index[0]], s[nw.original_index[1]]}};
  ChannelConfig pc = kFig3;
  CHECK(raw_weighted_objective(kFig3, raw, s) ==
        doctest::Approx(nw.scale * weighted_objective(pc, nw.weights, sorted)));
  CHECK(raw_weighted_objective(kFig3, raw, s) ==
        doctest::Approx(objective2(kFig3, 3, 6, 1.2, 0.3, 0.8)));
}
