#pragma once

#include "luba/auction_core.hpp"
#include "luba/backtest.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace luba {

/// The three per-bid responses the auction site reports.
enum class BidFeedback { LOWEST_UNIQUE, UNIQUE_NOT_LOWEST, NOT_UNIQUE };

std::string feedback_name(BidFeedback feedback);

struct BookEntry {
  int bidder = 0;
  std::int64_t arrival = 0;
};

struct DynamicAuctionState {
  AuctionConfig config;
  std::map<Bid, std::vector<BookEntry>> book;
  std::int64_t clock = 0;
  std::int64_t horizon = 0;
};

struct SubmitError : std::runtime_error {
  enum class Kind { duplicate_own_bid, budget_exhausted, auction_closed, not_own_bid };
  SubmitError(Kind kind, const std::string& what);
  Kind kind;
};

struct TranscriptEvent {
  std::int64_t tick = 0;
  int bidder = 0;
  Bid amount = 0;
  std::string feedback;  // feedback name, or "rejected:<reason>"
};

/// Dynamic auction book with the three-message feedback protocol. Bidders see
/// only the status of their own amounts; the engine enforces that via
/// status_of's ownership check.
class AuctionEngine {
 public:
  AuctionEngine(AuctionConfig config, std::int64_t horizon, std::vector<Money> budgets);

  /// Places a bid and returns its status on the updated book. Throws
  /// SubmitError on duplicate own bids, exhausted budget, or a closed auction.
  BidFeedback submit(int bidder, Bid amount);

  /// Current status of a bid the bidder previously placed.
  BidFeedback status_of(int bidder, Bid amount) const;

  void advance();  // clock += 1
  std::int64_t clock() const { return state_.clock; }
  std::int64_t horizon() const { return state_.horizon; }
  bool closed() const { return state_.clock >= state_.horizon; }

  const DynamicAuctionState& state() const { return state_; }
  const std::set<Bid>& own_bids(int bidder) const;
  int count(Bid amount) const;
  std::optional<Bid> lowest_unique() const;
  Money remaining_budget(int bidder) const;
  std::int64_t accepted_bids(int bidder) const;

  BidProfile book_as_profile() const;
  Outcome final_outcome() const;  // resolve on the accumulated book

  const std::vector<TranscriptEvent>& transcript() const { return transcript_; }
  void record_rejection(int bidder, Bid amount, const std::string& reason);

 private:
  DynamicAuctionState state_;
  std::vector<Money> remaining_;
  std::vector<std::set<Bid>> own_;
  std::vector<std::int64_t> accepted_;
  std::set<Bid> unique_amounts_;
  std::int64_t next_arrival_ = 0;
  std::vector<TranscriptEvent> transcript_;
};

struct AgentSpec {
  enum class Kind { noisy_poisson, block, interval_dynamic };
  Kind kind = Kind::noisy_poisson;

  // noisy_poisson
  double alpha = 2.0;

  // block
  double x_pct = 0.0;
  double y_pct = 2.0;

  // interval_dynamic
  double q = 0.95;
  int probe_count = 5;
  Money probe_budget = 0;       // 0 means "no separate probe cap"
  std::int64_t end_margin = 1;  // final ticks reserved for the kill interval
  Bid calibrated_x = 1;         // lower extreme, from calibrate_x on history
  bool extend_above_y = false;  // also kill intervals between higher own uniques

  Money budget = kUnlimitedBudget;

  static constexpr Money kUnlimitedBudget = INT64_C(1) << 60;
  void validate() const;
};

struct RunResult {
  std::vector<TranscriptEvent> transcript;
  Outcome outcome;
  std::vector<Money> agent_money;  // fees paid, plus value - price for the winner
};

/// Runs one auction: agents act in round-robin order each tick, the block
/// agent at the last tick, and the final outcome is auction_core::resolve on
/// the accumulated book. Fully determined by (agents, config, horizon, seed).
RunResult run_auction(const std::vector<AgentSpec>& agents, const AuctionConfig& config,
                      std::int64_t horizon, std::uint64_t seed);

/// Lower empirical q-quantile of the z-statistics of past auctions.
Bid calibrate_x(const std::vector<AuctionRecord>& history, double q);

/// Transcript JSONL: one event object per line, then a footer line holding the
/// outcome and per-agent money. Field order is stable for golden files.
void write_transcript(std::ostream& out, const RunResult& result);

/// Replays events through a fresh engine and verifies every recorded feedback
/// (including rejections). Throws std::runtime_error on the first mismatch.
void replay_transcript(const std::vector<TranscriptEvent>& events, const AuctionConfig& config,
                       std::int64_t horizon, const std::vector<Money>& budgets);

}  // namespace luba
