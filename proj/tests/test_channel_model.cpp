#include <doctest.h>

#include <cmath>

#include "macamp/channel_model.hpp"

using namespace macamp;

namespace {

ChannelConfig cfg(std::vector<double> p, double q, double n0, double alpha = 1.0) {
  return ChannelConfig{std::move(p), q, n0, alpha};
}

std::string error_of(const ChannelConfig& c) {
  try {
    validate(c);
  } catch (const InvalidArgument& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("validate accepts the two-sender example and a zero-power user") {
  CHECK_NOTHROW(validate(cfg({2, 2}, 1, 1)));
  CHECK_NOTHROW(validate(cfg({0}, 1, 1)));
}

TEST_CASE("validate rejects bad parameters with the documented messages") {
  CHECK(error_of(cfg({2, 2}, 0, 1)).find("state_var must be positive") != std::string::npos);
  CHECK(error_of(cfg({2, 2}, 1, 0)).find("noise_var must be positive") != std::string::npos);
  CHECK(error_of(cfg({}, 1, 1)).find("n_users must be positive") != std::string::npos);
  CHECK(error_of(cfg({2, -1}, 1, 1)).find("non-negative") != std::string::npos);
  CHECK(error_of(cfg({2}, 1, 1, 1.5)).find("state_coupling") != std::string::npos);
  CHECK_THROWS_AS(validate(cfg({2, 2}, 1, 1), 3), InvalidArgument);
}

TEST_CASE("validate_split enforces length and range") {
  const auto c = cfg({2, 2}, 1, 1);
  CHECK_NOTHROW(validate_split(c, make_split(0.0, 1.0)));
  CHECK_THROWS_AS(validate_split(c, PowerSplit{{0.5}}), InvalidArgument);
  CHECK_THROWS_AS(validate_split(c, make_split(-0.1, 0.5)), InvalidArgument);
  CHECK_THROWS_AS(validate_split(c, make_split(0.5, 1.1)), InvalidArgument);
}

TEST_CASE("reduce_uncoded_user folds the uncoded sender into the state") {
  SUBCASE("three senders, coupling 0") {
    const auto r = reduce_uncoded_user(cfg({2, 2, 2}, 1, 1, 0.0), 2);
    CHECK(r.powers == std::vector<double>{2, 2});
    CHECK(r.state_var == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(r.noise_var == 1.0);
    CHECK(r.state_coupling == 1.0);
  }
  SUBCASE("zero-power user leaves the state unchanged") {
    const auto r = reduce_uncoded_user(cfg({1.7, 0}, 1, 1), 1);
    CHECK(r.powers == std::vector<double>{1.7});
    CHECK(r.state_var == doctest::Approx(1.0));
  }
  SUBCASE("coupling 1 adds amplitudes") {
    const auto r = reduce_uncoded_user(cfg({2, 2, 2}, 1, 1), 2);
    CHECK(r.state_var == doctest::Approx((1 + std::sqrt(2.0)) * (1 + std::sqrt(2.0))));
    CHECK(r.state_var == doctest::Approx(5.8284).epsilon(1e-4));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(reduce_uncoded_user(cfg({2, 2}, 1, 1), 2), InvalidArgument);
    try {
      reduce_uncoded_user(cfg({2, 0}, 1, 1, 0.0), 1);
      FAIL("expected an error");
    } catch (const InvalidArgument& e) {
      CHECK(std::string(e.what()).find("zero-variance state") != std::string::npos);
    }
  }
}
