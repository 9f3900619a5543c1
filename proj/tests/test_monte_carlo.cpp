#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "macamp/io.hpp"
#include "macamp/monte_carlo.hpp"
#include "macamp/tradeoff_two_user.hpp"

using namespace macamp;

namespace {

const ChannelConfig kFig3{{2.0, 2.0}, 1.0, 1.0, 1.0};

double z_score(const Estimate& e, double target) { return std::abs(e.mean - target) / e.se; }

}  // namespace

TEST_CASE("empirical distortion at full amplification") {
  const auto r = simulate_distortion(kFig3, make_split(0, 0), 100000, 2024);
  CHECK(r.distortion_target == doctest::Approx(0.063874).epsilon(1e-5));
  CHECK(z_score(r.distortion, r.distortion_target) <= 4.0);
  CHECK(power_audit(r));
}

TEST_CASE("empirical distortion with silent transmitters") {
  const ChannelConfig silent{{0, 0}, 1.5, 0.5, 1};
  const auto r = simulate_distortion(silent, make_split(0.5, 0.5), 100000, 9);
  CHECK(r.distortion_target == doctest::Approx(1.5 * 0.5 / 2.0));
  CHECK(z_score(r.distortion, r.distortion_target) <= 4.0);
}

TEST_CASE("same seed gives identical reports, different seeds differ") {
  const auto a = simulate_distortion(kFig3, make_split(0.3, 0.6), 20000, 77);
  const auto b = simulate_distortion(kFig3, make_split(0.3, 0.6), 20000, 77);
  const auto c = simulate_distortion(kFig3, make_split(0.3, 0.6), 20000, 78);
  CHECK(io::to_json(a).dump() == io::to_json(b).dump());
  CHECK(a.distortion.mean != c.distortion.mean);

  const auto d1 = estimate_dpc_rate(kFig3, make_split(0.8, 0.4), {0, 1}, 20000, 5);
  const auto d2 = estimate_dpc_rate(kFig3, make_split(0.8, 0.4), {0, 1}, 20000, 5);
  CHECK(io::to_json(d1).dump() == io::to_json(d2).dump());
}

TEST_CASE("substreams are independent of the thread count") {
  CHECK(substream_seed(1, 0) != substream_seed(1, 1));
  CHECK(substream_seed(1, 0) != substream_seed(2, 0));
  CHECK(substream_seed(5, 3) == substream_seed(5, 3));
}

TEST_CASE("DPC rate estimates") {
  SUBCASE("user 1 decoded first reaches the A2 corner") {
    const auto r = estimate_dpc_rate(kFig3, make_split(1, 1), {0, 1}, 100000, 31);
    REQUIRE(r.rates.size() == 2u);
    CHECK(r.rates[0].target == doctest::Approx(0.5 * std::log2(1 + 2.0 / 3.0)));
    CHECK(r.rates[0].target == doctest::Approx(0.36848).epsilon(1e-5));
    CHECK(z_score(r.rates[0].estimate, r.rates[0].target) <= 4.0);
    CHECK(z_score(r.rates[1].estimate, r.rates[1].target) <= 4.0);
  }
  SUBCASE("reversed order mirrors the corner") {
    const auto r = estimate_dpc_rate(kFig3, make_split(1, 1), {1, 0}, 100000, 32);
    const auto a1 = corner_points(kFig3, 1, 1).a1;
    CHECK(r.rates[0].target == doctest::Approx(a1.r1));
    CHECK(r.rates[1].target == doctest::Approx(a1.r2));
    CHECK(z_score(r.rates[0].estimate, a1.r1) <= 4.0);
    CHECK(z_score(r.rates[1].estimate, a1.r2) <= 4.0);
  }
  SUBCASE("zero message power is reported exactly") {
    const auto r = estimate_dpc_rate(kFig3, make_split(0, 0.7), {0, 1}, 1000, 3);
    CHECK(r.rates[0].exact);
    CHECK(r.rates[0].estimate.mean == 0.0);
    CHECK(r.rates[0].estimate.se == 0.0);
  }
}

TEST_CASE("power audit") {
  auto r = simulate_distortion(kFig3, make_split(0.4, 0.9), 100000, 1);
  CHECK(power_audit(r));
  r.empirical_powers[0] = 2.0 * r.power_budgets[0];
  CHECK_FALSE(power_audit(r));

  int failures = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    failures += power_audit(simulate_distortion(kFig3, make_split(0.5, 0.5), 10000, s)) ? 0 : 1;
  }
  CHECK(failures <= 1);
}

TEST_CASE("standard error shrinks like 1/sqrt(n)") {
  double ratio_sum = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto small = simulate_distortion(kFig3, make_split(0.5, 0.2), 5000, 100 + s);
    const auto large = simulate_distortion(kFig3, make_split(0.5, 0.2), 20000, 100 + s);
    ratio_sum += large.distortion.se / small.distortion.se;
  }
  CHECK(ratio_sum / 20 == doctest::Approx(0.5).epsilon(0.3));
}

TEST_CASE("argument errors") {
  CHECK_THROWS_WITH_AS(simulate_distortion(kFig3, make_split(0, 0), 10, 1),
                       doctest::Contains("n too small"), InvalidArgument);
  CHECK_THROWS_AS(simulate_distortion(kFig3, PowerSplit{{0.5}}, 1000, 1), InvalidArgument);
  const ChannelConfig three{{1, 1, 1}, 1, 1, 1};
  CHECK_THROWS_AS(estimate_dpc_rate(three, PowerSplit{{1, 1, 1}}, {0, 1, 2}, 1000, 1),
                  InvalidArgument);
}

TEST_CASE("reports do not depend on the worker count") {
  ::setenv("MACAMP_THREADS", "1", 1);
  const auto one = io::to_json(simulate_distortion(kFig3, make_split(0.2, 0.9), 50000, 8)).dump();
  ::setenv("MACAMP_THREADS", "6", 1);
  const auto six = io::to_json(simulate_distortion(kFig3, make_split(0.2, 0.9), 50000, 8)).dump();
  ::unsetenv("MACAMP_THREADS");
  CHECK(one == six);
}
