#pragma once

#include "luba/auction_core.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace luba {

enum class ItemKind { real_item, coupon };

/// One historical or synthetic auction: per-integer bid counts plus metadata.
struct AuctionRecord {
  std::string auction_id;
  Money item_value = 0;  // cents
  Money bid_cost = 0;    // cents per bid
  ItemKind item_kind = ItemKind::real_item;
  std::vector<std::pair<Bid, std::uint32_t>> counts;  // ascending by integer
  std::optional<Bid> winner_bid;

  void validate() const;
  /// min{j : counts[j] == 1}, the resolve-equivalent winner of the record.
  std::optional<Bid> recompute_winner() const;
};

/// Interval strategy: bid every integer between x% and y% of the item value.
struct BlockStrategySpec {
  double x = 0.0;  // percent
  double y = 0.0;  // percent
  void validate() const;
};

struct InjectionResult {
  bool won = false;
  std::optional<Bid> winning_bid_after;
  std::int64_t bids_placed = 0;
  Money fee_spent = 0;
  Money price_paid = 0;
  Money value_won = 0;
};

/// Integers covered by the block: ceil(x% of V) .. floor(y% of V), clipped to
/// j >= 1. With the item value V in euros, x% of V euros is exactly x*V cents;
/// the bounds are computed in exact integer arithmetic on values rounded to
/// 1e-4 percent.
std::vector<Bid> block_bids(const BlockStrategySpec& spec, Money item_value);

/// Adds the block as one last-moment bidder on top of the recorded counts.
/// An injected bid on an integer with original count 1 kills it; on an absent
/// integer it creates a unique bid owned by the injector.
InjectionResult inject(const AuctionRecord& record, const BlockStrategySpec& spec);

enum class SpendDenominator { fees_plus_price, fees_only };

struct GridCell {
  double x = 0.0;
  double y = 0.0;
  double performance = 0.0;
  std::int64_t wins = 0;
  std::int64_t auctions = 0;
  bool defined = false;  // false when the total spend is zero
};

/// Evaluates the block strategy on every (x, y) pair with x < y.
/// performance = total value won / total spend across all records.
std::vector<GridCell> performance_grid(const std::vector<AuctionRecord>& records,
                                       const std::vector<double>& x_values,
                                       const std::vector<double>& y_values,
                                       SpendDenominator denominator =
                                           SpendDenominator::fees_plus_price);

struct CdfResult {
  std::vector<std::pair<double, double>> points;  // (ratio percent, cum fraction)
  std::size_t excluded = 0;                       // records without a winner
};

/// Empirical CDF of winning bid as a percentage of item value.
CdfResult winning_bid_cdf(const std::vector<AuctionRecord>& records);

/// Smallest integer >= 1 with no bid on it.
Bid lowest_free_integer(const AuctionRecord& record);

/// Bid counts over [lo, hi], zeros included.
std::vector<std::pair<Bid, std::uint32_t>> multiplicity_histogram(const AuctionRecord& record,
                                                                  Bid lo, Bid hi);

/// Largest m >= 1 such that every integer below m received at least three
/// bids. m = 1 holds vacuously.
std::int64_t z_statistic(const AuctionRecord& record);

enum class ParseMode { strict, permissive };

/// Line-delimited JSON record I/O. Strict mode rejects unknown fields and
/// records whose stored winner disagrees with the counts; permissive mode
/// ignores unknown fields and recomputes the winner.
std::vector<AuctionRecord> read_records(std::istream& in, ParseMode mode = ParseMode::strict);
std::vector<AuctionRecord> read_records_file(const std::string& path,
                                             ParseMode mode = ParseMode::strict);
void write_records(std::ostream& out, const std::vector<AuctionRecord>& records);

/// Grid CSV: header "x_pct,y_pct,performance,wins,auctions", 6 significant
/// digits, '.' decimals, LF line endings. Undefined cells print "nan".
void write_grid_csv(std::ostream& out, const std::vector<GridCell>& grid);

std::string item_kind_name(ItemKind kind);
ItemKind item_kind_from_name(const std::string& name);

}  // namespace luba
