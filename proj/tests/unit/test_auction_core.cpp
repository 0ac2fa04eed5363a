#include "doctest.h"

#include "luba/auction_core.hpp"
#include "luba/rng.hpp"

#include <algorithm>
#include <numeric>

using namespace luba;

namespace {

BidProfile profile(std::vector<std::vector<Bid>> sets) {
  BidProfile p;
  for (auto& s : sets) p.sets.push_back(BidSet(std::move(s)));
  return p;
}

}  // namespace

TEST_CASE("bid sets are sorted, deduplicated, positive") {
  const BidSet s({3, 1, 2, 3});
  CHECK(s.values() == std::vector<Bid>{1, 2, 3});
  CHECK(s.is_prefix());
  CHECK(!BidSet({2}).is_prefix());
  CHECK(BidSet().is_prefix());
  CHECK(BidSet::prefix(0).empty());
  CHECK(BidSet::prefix(3).values() == std::vector<Bid>{1, 2, 3});
  CHECK(s.to_string() == "{1,2,3}");
  CHECK(BidSet().to_string() == "∅");
  CHECK_THROWS_AS(BidSet({0}), std::invalid_argument);
  CHECK_THROWS_AS(BidSet({-2}), std::invalid_argument);
}

TEST_CASE("resolve picks the lowest unique bid") {
  SUBCASE("all bids collide") {
    const Outcome out = resolve(profile({{1}, {1}}));
    CHECK(!out.has_winner());
    CHECK(out.unique_set.empty());
  }
  SUBCASE("unique bid among doubles") {
    const Outcome out = resolve(profile({{1, 2}, {1}}));
    CHECK(out.winner == 0);
    CHECK(out.winning_bid == 2);
    CHECK(out.unique_set == std::vector<Bid>{2});
  }
  SUBCASE("lone participant wins at 1") {
    const Outcome out = resolve(profile({{1}, {}}));
    CHECK(out.winner == 0);
    CHECK(out.winning_bid == 1);
  }
  SUBCASE("empty profile has no winner") {
    CHECK(!resolve(BidProfile{}).has_winner());
  }
}

TEST_CASE("bidder payoffs") {
  const AuctionConfig config{2, 4, 1};
  SUBCASE("winner pays the winning bid") {
    const auto u = bidder_payoffs(profile({{1}, {1, 2}}), config);
    CHECK(u == std::vector<Money>{-1, 0});
  }
  SUBCASE("non-participant earns zero") {
    const auto u = bidder_payoffs(profile({{}, {1}}), config);
    CHECK(u[0] == 0);
  }
  SUBCASE("uncontested bid at 1") {
    const auto u = bidder_payoffs(profile({{1}, {}}), config);
    CHECK(u == std::vector<Money>{2, 0});
  }
}

TEST_CASE("seller payoff") {
  const AuctionConfig config{2, 4, 1};
  CHECK(seller_payoff(profile({{1}, {1, 2}}), config) == 1);  // 3 + 2 - 4
  CHECK(seller_payoff(profile({{}, {}}), config) == 0);
  // no winner: fees only, no item transfer
  CHECK(seller_payoff(profile({{1}, {1}}), config) == 2);
}

TEST_CASE("config invariants") {
  CHECK_THROWS_AS((AuctionConfig{0, 4, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((AuctionConfig{2, 0, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((AuctionConfig{2, 4, 0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((AuctionConfig{2, 4, 0, true}.validate()));  // promo auction
  CHECK(AuctionConfig{2, 400, 1}.bid_cap() == 400);
  CHECK((AuctionConfig{2, 400, 1, false, 50}.bid_cap()) == 50);
}

namespace {

BidProfile random_profile(Rng& rng, int n, Bid max_bid) {
  BidProfile p;
  for (int i = 0; i < n; ++i) {
    std::vector<Bid> bids;
    const int size = static_cast<int>(rng.uniform_int(0, 4));
    for (int k = 0; k < size; ++k) bids.push_back(rng.uniform_int(1, max_bid));
    p.sets.push_back(BidSet(std::move(bids)));
  }
  return p;
}

}  // namespace

TEST_CASE("zero-sum, equivariance, uniqueness properties") {
  Rng rng(99, 0);
  for (int iter = 0; iter < 300; ++iter) {
    const int n = static_cast<int>(rng.uniform_int(1, 4));
    const AuctionConfig config{n, 10, 1};
    const BidProfile p = random_profile(rng, n, 8);

    const auto u = bidder_payoffs(p, config);
    const Money us = seller_payoff(p, config);
    CHECK(std::accumulate(u.begin(), u.end(), Money{0}) + us == 0);

    const Outcome out = resolve(p);
    if (out.has_winner()) {
      int owners = 0;
      for (const BidSet& s : p.sets) owners += s.contains(*out.winning_bid) ? 1 : 0;
      CHECK(owners == 1);
      CHECK(*out.winning_bid == out.unique_set.front());
    }

    // relabeling bidders relabels the winner
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[static_cast<std::size_t>(i)],
                perm[static_cast<std::size_t>(rng.uniform_int(0, i))]);
    BidProfile q;
    q.sets.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      q.sets[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] =
          p.sets[static_cast<std::size_t>(i)];
    const Outcome out_q = resolve(q);
    CHECK(out_q.winning_bid == out.winning_bid);
    CHECK(out_q.unique_set == out.unique_set);
    if (out.has_winner())
      CHECK(*out_q.winner == perm[static_cast<std::size_t>(*out.winner)]);
  }
}
