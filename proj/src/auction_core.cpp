#include "luba/auction_core.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace luba {

void AuctionConfig::validate() const {
  if (n < 1) throw std::invalid_argument("auction needs at least one bidder");
  if (value <= 0) throw std::invalid_argument("item value must be positive");
  if (bid_cost < 0 || (bid_cost == 0 && !promo))
    throw std::invalid_argument("bid cost must be positive (zero only with promo flag)");
  if (max_bid < 0) throw std::invalid_argument("max_bid must be non-negative");
}

BidSet::BidSet(std::vector<Bid> bids) : bids_(std::move(bids)) {
  for (Bid b : bids_)
    if (b < 1) throw std::invalid_argument("bids must be positive integers");
  std::sort(bids_.begin(), bids_.end());
  bids_.erase(std::unique(bids_.begin(), bids_.end()), bids_.end());
}

BidSet BidSet::prefix(Bid k) {
  if (k < 0) throw std::invalid_argument("prefix length must be non-negative");
  std::vector<Bid> v;
  v.reserve(static_cast<std::size_t>(k));
  for (Bid b = 1; b <= k; ++b) v.push_back(b);
  return BidSet(std::move(v));
}

bool BidSet::contains(Bid b) const {
  return std::binary_search(bids_.begin(), bids_.end(), b);
}

bool BidSet::is_prefix() const {
  return bids_.empty() ||
         (bids_.front() == 1 && bids_.back() == static_cast<Bid>(bids_.size()));
}

std::string BidSet::to_string() const {
  if (bids_.empty()) return "∅";
  std::string out = "{";
  for (std::size_t i = 0; i < bids_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(bids_[i]);
  }
  out += '}';
  return out;
}

Outcome resolve(const BidProfile& profile) {
  std::map<Bid, std::pair<int, int>> tally;  // bid -> (count, owner)
  for (int i = 0; i < profile.size(); ++i) {
    for (Bid b : profile.sets[static_cast<std::size_t>(i)].values()) {
      auto& slot = tally[b];
      slot.first += 1;
      slot.second = i;
    }
  }
  Outcome out;
  for (const auto& [bid, slot] : tally) {
    if (slot.first == 1) {
      out.unique_set.push_back(bid);
      if (!out.winning_bid) {
        out.winning_bid = bid;
        out.winner = slot.second;
      }
    }
  }
  return out;
}

std::vector<Money> bidder_payoffs(const BidProfile& profile, const AuctionConfig& config) {
  config.validate();
  if (profile.size() != config.n)
    throw std::invalid_argument("profile length does not match bidder count");
  const Outcome outcome = resolve(profile);
  std::vector<Money> payoffs(profile.sets.size());
  for (int i = 0; i < profile.size(); ++i) {
    Money u = -config.bid_cost * static_cast<Money>(profile.sets[static_cast<std::size_t>(i)].size());
    if (outcome.winner && *outcome.winner == i) u += config.value - *outcome.winning_bid;
    payoffs[static_cast<std::size_t>(i)] = u;
  }
  return payoffs;
}

Money seller_payoff(const BidProfile& profile, const AuctionConfig& config) {
  config.validate();
  if (profile.size() != config.n)
    throw std::invalid_argument("profile length does not match bidder count");
  Money total_bids = 0;
  for (const BidSet& s : profile.sets) total_bids += static_cast<Money>(s.size());
  Money u = config.bid_cost * total_bids;
  const Outcome outcome = resolve(profile);
  if (outcome.has_winner()) u += *outcome.winning_bid - config.value;
  return u;
}

}  // namespace luba
