#include "doctest.h"

#include "luba/equilibrium.hpp"

#include <cmath>

using namespace luba;

TEST_CASE("two-bidder closed form, v=4 c=1") {
  const MonotoneMixedStrategy s = two_bidder_symmetric(4, 1);
  CHECK(s.depth() == 2);
  CHECK(s.p_empty == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(s.p[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.p[1] == doctest::Approx(1.0 / 6).epsilon(1e-12));
}

TEST_CASE("two-bidder closed form, v=10 c=1") {
  const MonotoneMixedStrategy s = two_bidder_symmetric(10, 1);
  CHECK(s.depth() == 6);
  CHECK(s.p_empty == doctest::Approx(1.0 / 9).epsilon(1e-12));
  const double expected[] = {1.0 / 8, 1.0 / 7, 1.0 / 6, 1.0 / 5, 1.0 / 4};
  for (int l = 1; l <= 5; ++l)
    CHECK(s.p[static_cast<std::size_t>(l - 1)] ==
          doctest::Approx(expected[l - 1]).epsilon(1e-12));
  // remainder = 1 - (1/9 + 1/8 + 1/7 + 1/6 + 1/5 + 1/4) = 11/2520
  CHECK(s.p[5] == doctest::Approx(11.0 / 2520).epsilon(1e-9));
}

TEST_CASE("two-bidder degenerate inputs") {
  CHECK_THROWS_AS(two_bidder_symmetric(2, 1), std::domain_error);
  CHECK_THROWS_AS(two_bidder_symmetric(3, 2), std::domain_error);
  CHECK_THROWS_AS(two_bidder_symmetric(0, 1), std::invalid_argument);
}

TEST_CASE("zero expected payoff identity for every prefix depth") {
  for (Money v = 3; v <= 30; ++v) {
    for (Money c = 1; c <= v - 2; ++c) {
      const MonotoneMixedStrategy s = two_bidder_symmetric(v, c);
      for (int l = 1; l <= s.depth(); ++l) {
        // bidding {1..l} against the strategy must break even:
        // l*c = p_empty*(v-1) + sum_{i<l} p_i*(v-(i+1))
        double gain = s.p_empty * static_cast<double>(v - 1);
        for (int i = 1; i < l; ++i)
          gain += s.p[static_cast<std::size_t>(i - 1)] * static_cast<double>(v - (i + 1));
        CHECK(std::abs(gain - static_cast<double>(l) * static_cast<double>(c)) < 1e-9);
      }
    }
  }
}

TEST_CASE("two-bidder strategy passes the oracle on a small grid") {
  for (Money v : {3, 4, 5, 6, 8, 10, 12}) {
    for (Money c = 1; c <= std::min<Money>(3, v - 2); ++c) {
      const MonotoneMixedStrategy s = two_bidder_symmetric(v, c);
      const MixedStrategy sigma = s.to_mixed();
      const AuctionConfig config{2, v, c};
      const StrategySpace space{s.depth() + 2, s.depth() + 2, false};
      const NashReport report =
          epsilon_nash_check({sigma, sigma}, space, config, 1e-9, 100'000'000);
      CAPTURE(v);
      CAPTURE(c);
      CHECK(report.is_eq);
      CHECK(report.seller_expected <= 1e-9);
    }
  }
}

TEST_CASE("nonexistence certificate, worked values") {
  const NonexistenceCertificate cert = noneq_certificate(3, 100, 2);
  CHECK(cert.x_empty == doctest::Approx(0.14213381).epsilon(1e-6));
  CHECK(cert.x_1 == doctest::Approx(0.05938587).epsilon(1e-6));
  CHECK(2 * cert.x_1 < cert.x_empty);
  CHECK(cert.lhs == doctest::Approx(2.0204082).epsilon(1e-7));
  CHECK(cert.rhs == 2.25);  // exactly 9/4 for k = 3
  CHECK(cert.certified());

  // implied zero-payoff consistency: x_empty^(k-1) * (v-1) = c
  const double back = std::pow(cert.x_empty, cert.k - 1) * 99.0;
  CHECK(std::abs(back - 2.0) < 1e-9);
}

TEST_CASE("nonexistence certificate, k = 3 right side is exactly 9/4") {
  for (Money v : {11, 100, 1000})
    CHECK(noneq_certificate(3, v, 1).rhs == 2.25);
}

TEST_CASE("nonexistence certificate right side grows with k") {
  double prev = 0.0;
  for (int k = 3; k <= 12; ++k) {
    const double rhs = noneq_certificate(k, 1000, 1).rhs;
    CHECK(rhs > prev);
    prev = rhs;
  }
}

TEST_CASE("nonexistence certificate preconditions") {
  CHECK_THROWS_AS(noneq_certificate(2, 100, 1), std::domain_error);
  CHECK_THROWS_AS(noneq_certificate(3, 10, 1), std::domain_error);    // v must exceed 10
  CHECK_THROWS_AS(noneq_certificate(3, 100, 50), std::domain_error);  // v <= 2c+2
}

TEST_CASE("asymmetric example profile") {
  const auto profile = asymmetric_example_profile(2, 4, 1);
  REQUIRE(profile.size() == 2);
  CHECK(profile[0].support.size() == 1);
  CHECK(profile[0].support[0].first == BidSet({1}));
  CHECK(profile[1].support.size() == 2);

  const AuctionConfig config{2, 4, 1};
  const auto payoffs = expected_payoffs(profile, config);
  CHECK(payoffs[0] == 0.5);
  CHECK(payoffs[1] == 0.0);
  CHECK(expected_seller_payoff(profile, config) == -0.5);
  CHECK(epsilon_nash_check(profile, StrategySpace{5, 5}, config, 1e-9).is_eq);

  const auto three = asymmetric_example_profile(3, 4, 1);
  REQUIRE(three.size() == 3);
  CHECK(three[1].support.size() == 2);
  CHECK(three[2].support.size() == 2);
}

TEST_CASE("minimum high bid bound") {
  CHECK(min_high_bid_bound(4, 1) == 1);
  CHECK(min_high_bid_bound(500, 0.5) == 333);
  CHECK(min_high_bid_bound(2, 1) == 0);
}
