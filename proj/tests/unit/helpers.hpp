#pragma once

#include "luba/backtest.hpp"

#include <string>
#include <utility>
#include <vector>

namespace luba::testing {

inline AuctionRecord make_record(std::string id, Money item_value_cents, Money bid_cost_cents,
                                 std::vector<std::pair<Bid, std::uint32_t>> counts) {
  AuctionRecord record;
  record.auction_id = std::move(id);
  record.item_value = item_value_cents;
  record.bid_cost = bid_cost_cents;
  record.item_kind = ItemKind::real_item;
  record.counts = std::move(counts);
  record.winner_bid = record.recompute_winner();
  return record;
}

// Deterministic record shaped like the heavily block-bid auction the backtest
// module is built to analyze: integers 1..60 all collide, 61 is the unique
// winner, everything up to 2371 is covered, 2372 is the first free integer,
// and multiplicities over [61, 2371] max out at 6 (twice) and 5 (five times).
inline AuctionRecord heavy_block_fixture() {
  std::vector<std::pair<Bid, std::uint32_t>> counts;
  for (Bid j = 1; j <= 60; ++j) counts.emplace_back(j, 2 + (j % 3));
  counts.emplace_back(61, 1);
  for (Bid j = 62; j <= 2371; ++j) {
    std::uint32_t c = 1;
    if (j == 100 || j == 200) c = 6;
    else if (j >= 300 && j <= 304) c = 5;
    else if (j % 7 == 0) c = 2;
    else if (j % 11 == 0) c = 3;
    else if (j % 13 == 0) c = 4;
    counts.emplace_back(j, c);
  }
  return make_record("6787-shaped", 104900, 50, std::move(counts));
}

}  // namespace luba::testing
