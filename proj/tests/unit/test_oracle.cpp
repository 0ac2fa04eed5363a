#include "doctest.h"

#include "luba/equilibrium.hpp"
#include "luba/oracle.hpp"
#include "luba/rng.hpp"

#include <algorithm>
#include <cmath>

using namespace luba;

namespace {

MixedStrategy mix(std::vector<std::pair<std::vector<Bid>, double>> atoms) {
  MixedStrategy s;
  for (auto& [bids, p] : atoms) s.support.emplace_back(BidSet(std::move(bids)), p);
  return s;
}

bool argmax_contains(const BestResponse& br, const BidSet& s) {
  return std::find(br.argmax.begin(), br.argmax.end(), s) != br.argmax.end();
}

}  // namespace

TEST_CASE("mixed strategy validation") {
  CHECK_NOTHROW(mix({{{1}, 0.5}, {{}, 0.5}}).validate());
  CHECK_THROWS(mix({{{1}, 0.6}, {{}, 0.5}}).validate());
  CHECK_THROWS(mix({{{1}, 0.5}, {{1}, 0.5}}).validate());
  CHECK_THROWS(mix({{{1}, -0.1}, {{}, 1.1}}).validate());
  CHECK(mix({{{1, 2}, 0.5}, {{}, 0.5}}).is_monotone());
  CHECK(!mix({{{2}, 1.0}}).is_monotone());
}

TEST_CASE("point masses reduce to exact payoffs") {
  Rng rng(5, 0);
  for (int iter = 0; iter < 100; ++iter) {
    const int n = static_cast<int>(rng.uniform_int(2, 4));
    const AuctionConfig config{n, 12, 2};
    BidProfile pure;
    std::vector<MixedStrategy> mixed;
    for (int i = 0; i < n; ++i) {
      std::vector<Bid> bids;
      const int size = static_cast<int>(rng.uniform_int(0, 3));
      for (int k = 0; k < size; ++k) bids.push_back(rng.uniform_int(1, 6));
      BidSet s(std::move(bids));
      pure.sets.push_back(s);
      mixed.push_back(MixedStrategy::point_mass(s));
    }
    const auto exact = bidder_payoffs(pure, config);
    const auto expected = expected_payoffs(mixed, config);
    for (int i = 0; i < n; ++i)
      CHECK(expected[static_cast<std::size_t>(i)] ==
            static_cast<double>(exact[static_cast<std::size_t>(i)]));
    CHECK(expected_seller_payoff(mixed, config) ==
          static_cast<double>(seller_payoff(pure, config)));
  }
}

TEST_CASE("symmetric two-bidder strategy earns zero against itself") {
  const AuctionConfig config{2, 4, 1};
  const MixedStrategy sigma = two_bidder_symmetric(4, 1).to_mixed();
  const auto payoffs = expected_payoffs({sigma, sigma}, config);
  CHECK(std::abs(payoffs[0]) < 1e-9);
  CHECK(std::abs(payoffs[1]) < 1e-9);
}

TEST_CASE("asymmetric example expectations are exact") {
  const AuctionConfig config{2, 4, 1};
  const std::vector<MixedStrategy> profile = {
      MixedStrategy::point_mass(BidSet({1})), mix({{{1, 2}, 0.5}, {{}, 0.5}})};
  const auto payoffs = expected_payoffs(profile, config);
  CHECK(payoffs[0] == 0.5);
  CHECK(payoffs[1] == 0.0);
  CHECK(expected_seller_payoff(profile, config) == -0.5);
}

TEST_CASE("best response against the symmetric strategy is indifferent") {
  const AuctionConfig config{2, 4, 1};
  const std::vector<MixedStrategy> others = {two_bidder_symmetric(4, 1).to_mixed()};
  const BestResponse br = best_response(0, others, StrategySpace{5, 5}, config);
  CHECK(std::abs(br.value) < 1e-9);
  CHECK(argmax_contains(br, BidSet()));
  CHECK(argmax_contains(br, BidSet({1})));
  CHECK(argmax_contains(br, BidSet({1, 2})));
  CHECK(std::is_sorted(br.argmax.begin(), br.argmax.end()));
}

TEST_CASE("best response against a non-participant takes the cheapest win") {
  const AuctionConfig config{2, 4, 1};
  const BestResponse br =
      best_response(0, {MixedStrategy::point_mass(BidSet())}, StrategySpace{5, 5}, config);
  CHECK(br.value == 2.0);
  CHECK(br.argmax == std::vector<BidSet>{BidSet({1})});
}

TEST_CASE("best response against the example mixture") {
  const AuctionConfig config{2, 4, 1};
  const BestResponse br =
      best_response(0, {mix({{{1, 2}, 0.5}, {{}, 0.5}})}, StrategySpace{5, 5}, config);
  CHECK(br.value == 0.5);
  CHECK(br.argmax == std::vector<BidSet>{BidSet({1})});
}

TEST_CASE("epsilon-Nash verdicts") {
  const AuctionConfig config{2, 4, 1};
  const StrategySpace space{5, 5};

  const MixedStrategy sigma = two_bidder_symmetric(4, 1).to_mixed();
  CHECK(epsilon_nash_check({sigma, sigma}, space, config, 1e-9).is_eq);

  const std::vector<MixedStrategy> example = {MixedStrategy::point_mass(BidSet({1})),
                                              mix({{{1, 2}, 0.5}, {{}, 0.5}})};
  CHECK(epsilon_nash_check(example, space, config, 1e-9).is_eq);

  const MixedStrategy one = MixedStrategy::point_mass(BidSet({1}));
  const NashReport report = epsilon_nash_check({one, one}, space, config, 1e-9);
  CHECK(!report.is_eq);
  CHECK(report.worst_gain == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.deviation == BidSet());
}

TEST_CASE("budget guard") {
  const AuctionConfig config{2, 4, 1};
  const MixedStrategy sigma = two_bidder_symmetric(4, 1).to_mixed();
  CHECK_THROWS_AS(expected_payoffs({sigma, sigma}, config, 5), BudgetExceededError);
  try {
    expected_payoffs({sigma, sigma}, config, 5);
  } catch (const BudgetExceededError& e) {
    CHECK(e.terms == 9);  // 3 x 3 support atoms
  }
  CHECK_THROWS_AS(
      best_response(0, {sigma}, StrategySpace{20, 20}, AuctionConfig{2, 40, 1}, 1000),
      BudgetExceededError);
}

TEST_CASE("oracle rejects bids beyond the mask width") {
  const AuctionConfig config{1, 100, 1};
  CHECK_THROWS_AS(expected_payoffs({MixedStrategy::point_mass(BidSet({64}))}, config),
                  std::domain_error);
}

TEST_CASE("monotone dominance transform") {
  {
    const auto [s1, s2] = monotone_dominance_transform(BidSet({2}));
    CHECK(s1 == BidSet({1}));
    CHECK(s2 == BidSet());
  }
  {
    const auto [s1, s2] = monotone_dominance_transform(BidSet({1, 3, 4}));
    CHECK(s1 == BidSet({1, 2, 4}));
    CHECK(s2 == BidSet({1}));
  }
  {
    const auto [s1, s2] = monotone_dominance_transform(BidSet({1, 2, 4, 7}));
    CHECK(s1 == BidSet({1, 2, 3, 7}));
    CHECK(s2 == BidSet({1, 2}));
  }
  CHECK_THROWS_AS(monotone_dominance_transform(BidSet({1, 2})), std::domain_error);
  CHECK_THROWS_AS(monotone_dominance_transform(BidSet()), std::domain_error);
}

namespace {

// probability that `s` wins with a winning bid >= threshold against tau
double win_high_probability(const BidSet& s, const MixedStrategy& tau, Bid threshold) {
  double p = 0.0;
  for (const auto& [opp, prob] : tau.support) {
    BidProfile profile;
    profile.sets = {s, opp};
    const Outcome out = resolve(profile);
    if (out.winner == 0 && *out.winning_bid >= threshold) p += prob;
  }
  return p;
}

MixedStrategy random_monotone(Rng& rng, int max_depth) {
  std::vector<double> w;
  double total = 0;
  const int depth = static_cast<int>(rng.uniform_int(1, max_depth));
  for (int i = 0; i <= depth; ++i) {
    w.push_back(0.05 + rng.uniform01());
    total += w.back();
  }
  MixedStrategy tau;
  for (int i = 0; i <= depth; ++i)
    tau.support.emplace_back(BidSet::prefix(i), w[static_cast<std::size_t>(i)] / total);
  // renormalize the last atom so the sum is exactly 1
  double sum = 0;
  for (std::size_t i = 0; i + 1 < tau.support.size(); ++i) sum += tau.support[i].second;
  tau.support.back().second = 1.0 - sum;
  return tau;
}

BidSet random_non_prefix(Rng& rng, Bid max_bid) {
  for (;;) {
    std::vector<Bid> bids;
    for (Bid b = 1; b <= max_bid; ++b)
      if (rng.uniform01() < 0.4) bids.push_back(b);
    BidSet s(std::move(bids));
    if (!s.is_prefix()) return s;
  }
}

}  // namespace

TEST_CASE("non-prefix sets are dominated against monotone opponents") {
  // value chosen above max_bid so every bid in play stays below the item value
  const AuctionConfig config{2, 10, 1};
  Rng rng(1234, 0);
  int strict_high = 0, strict_cheap = 0;
  for (int iter = 0; iter < 300; ++iter) {
    const MixedStrategy tau = random_monotone(rng, 5);
    const BidSet s = random_non_prefix(rng, 6);
    const auto [s_shift, s_trunc] = monotone_dominance_transform(s);

    const auto value_of = [&](const BidSet& candidate) {
      return expected_payoffs({MixedStrategy::point_mass(candidate), tau}, config)[0];
    };
    const double e = value_of(s);
    const double e_shift = value_of(s_shift);
    const double e_trunc = value_of(s_trunc);
    CHECK(std::max(e_shift, e_trunc) >= e - 1e-12);

    // find the gap used by the transform
    Bid gap = 0;
    for (Bid b : s.values())
      if (b >= 2 && !s.contains(b - 1)) {
        gap = b - 1;
        break;
      }
    const double p_high = win_high_probability(s, tau, gap + 1);
    if (p_high > 1e-12) {
      // moving the gap bid down wins the same events at least one cent cheaper
      CHECK(e_shift >= e + p_high - 1e-9);
      ++strict_high;
    } else {
      // never winning high: the truncation saves the dropped fees outright
      const double saved =
          static_cast<double>(config.bid_cost) * static_cast<double>(s.size() - s_trunc.size());
      CHECK(e_trunc >= e + saved - 1e-9);
      ++strict_cheap;
    }
  }
  CHECK(strict_high > 0);
  CHECK(strict_cheap > 0);
}
