#pragma once

#include "luba/money.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace luba {

// Bids are positive integers, in cents.
using Bid = std::int64_t;

/// Static configuration of one auction: n bidders compete for an item of
/// common value `value`, paying `bid_cost` per bid placed.
struct AuctionConfig {
  int n = 0;
  Money value = 0;
  Money bid_cost = 0;
  bool promo = false;  // promotional auctions may run with bid_cost = 0
  Money max_bid = 0;   // enumeration cap; 0 means "use value"

  Money bid_cap() const { return max_bid > 0 ? max_bid : value; }
  void validate() const;
};

/// One bidder's bids: a finite set of distinct positive integers.
class BidSet {
 public:
  BidSet() = default;
  explicit BidSet(std::vector<Bid> bids);
  static BidSet prefix(Bid k);  // {1, ..., k}; k = 0 gives the empty set

  const std::vector<Bid>& values() const { return bids_; }
  std::size_t size() const { return bids_.size(); }
  bool empty() const { return bids_.empty(); }
  bool contains(Bid b) const;
  bool is_prefix() const;  // empty or of the form {1, ..., k}
  std::string to_string() const;

  friend bool operator==(const BidSet&, const BidSet&) = default;
  friend auto operator<=>(const BidSet&, const BidSet&) = default;

 private:
  std::vector<Bid> bids_;  // sorted ascending, no duplicates
};

struct BidProfile {
  std::vector<BidSet> sets;
  int size() const { return static_cast<int>(sets.size()); }
};

struct Outcome {
  std::optional<int> winner;       // index into the profile
  std::optional<Bid> winning_bid;  // min of unique_set when present
  std::vector<Bid> unique_set;     // integers bid by exactly one bidder

  bool has_winner() const { return winner.has_value(); }
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Resolves an auction: the lowest integer bid by exactly one bidder wins.
/// An empty uniqueness set means no winner.
Outcome resolve(const BidProfile& profile);

/// Per-bidder payoffs: -bid_cost * |S_i| for everyone, plus value - winning_bid
/// for the winner.
std::vector<Money> bidder_payoffs(const BidProfile& profile, const AuctionConfig& config);

/// Seller payoff: fees on every bid, plus winning bid minus item value when the
/// item is sold. With no winner the seller keeps the item and collects fees only,
/// which preserves the zero-sum identity with the bidders.
Money seller_payoff(const BidProfile& profile, const AuctionConfig& config);

}  // namespace luba
