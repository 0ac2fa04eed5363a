#include "luba/backtest.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace luba {

namespace {

using ordered_json = nlohmann::ordered_json;

std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
  return (num + den - 1) / den;
}

constexpr std::int64_t kPercentScale = 10'000;  // percents held as 1e-4 units

std::int64_t percent_units(double pct) {
  const double scaled = pct * static_cast<double>(kPercentScale);
  const std::int64_t units = std::llround(scaled);
  if (std::abs(scaled - static_cast<double>(units)) > 1e-6)
    throw std::invalid_argument("percent values are limited to 1e-4 resolution");
  return units;
}

}  // namespace

void AuctionRecord::validate() const {
  if (auction_id.empty()) throw std::invalid_argument("record needs an auction_id");
  if (item_value <= 0) throw std::invalid_argument(auction_id + ": item value must be positive");
  if (bid_cost < 0) throw std::invalid_argument(auction_id + ": bid cost must be >= 0");
  Bid prev = 0;
  for (const auto& [bid, count] : counts) {
    if (bid < 1) throw std::invalid_argument(auction_id + ": bid integers must be >= 1");
    if (bid <= prev) throw std::invalid_argument(auction_id + ": counts must be strictly ascending");
    if (count < 1) throw std::invalid_argument(auction_id + ": stored counts must be >= 1");
    prev = bid;
  }
  if (winner_bid) {
    const std::optional<Bid> recomputed = recompute_winner();
    if (!recomputed || *recomputed != *winner_bid)
      throw std::invalid_argument(auction_id + ": stored winner disagrees with the bid counts");
  } else if (recompute_winner()) {
    throw std::invalid_argument(auction_id + ": counts have a unique minimum but no stored winner");
  }
}

std::optional<Bid> AuctionRecord::recompute_winner() const {
  for (const auto& [bid, count] : counts)
    if (count == 1) return bid;
  return std::nullopt;
}

void BlockStrategySpec::validate() const {
  if (!(x >= 0.0) || !(y <= 100.0) || !(x < y))
    throw std::invalid_argument("block spec needs 0 <= x < y <= 100");
}

std::vector<Bid> block_bids(const BlockStrategySpec& spec, Money item_value) {
  spec.validate();
  if (item_value <= 0) throw std::invalid_argument("item value must be positive");
  if (item_value > 9'000'000'000'000)  // keeps xu * item_value inside int64
    throw std::invalid_argument("item value out of range");
  const std::int64_t xu = percent_units(spec.x);
  const std::int64_t yu = percent_units(spec.y);
  // j in cents: x% of (item_value cents / 100) euros = xu * item_value / 1e6
  const std::int64_t denom = kPercentScale * 100;
  std::int64_t lo = ceil_div(xu * item_value, denom);
  const std::int64_t hi = (yu * item_value) / denom;
  lo = std::max<std::int64_t>(lo, 1);
  std::vector<Bid> out;
  if (hi >= lo) {
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t j = lo; j <= hi; ++j) out.push_back(j);
  }
  return out;
}

InjectionResult inject(const AuctionRecord& record, const BlockStrategySpec& spec) {
  record.validate();
  const std::vector<Bid> block = block_bids(spec, record.item_value);

  InjectionResult result;
  result.bids_placed = static_cast<std::int64_t>(block.size());
  result.fee_spent = record.bid_cost * result.bids_placed;

  // merge scan: lowest integer whose post-injection count is exactly 1
  std::size_t a = 0, b = 0;
  while (a < record.counts.size() || b < block.size()) {
    const Bid ja = a < record.counts.size() ? record.counts[a].first
                                            : std::numeric_limits<Bid>::max();
    const Bid jb = b < block.size() ? block[b] : std::numeric_limits<Bid>::max();
    if (ja < jb) {
      if (record.counts[a].second == 1) {
        result.winning_bid_after = ja;  // original unique bid survives
        break;
      }
      ++a;
    } else if (jb < ja) {
      result.winning_bid_after = jb;  // injected bid on a free integer
      result.won = true;
      break;
    } else {
      ++a;  // collision: the injected bid kills or joins a crowd
      ++b;
    }
  }
  if (result.won) {
    result.price_paid = *result.winning_bid_after;
    result.value_won = record.item_value;
  }
  return result;
}

std::vector<GridCell> performance_grid(const std::vector<AuctionRecord>& records,
                                       const std::vector<double>& x_values,
                                       const std::vector<double>& y_values,
                                       SpendDenominator denominator) {
  if (records.empty()) throw std::invalid_argument("performance grid needs records");
  std::vector<GridCell> grid;
  for (double x : x_values) {
    for (double y : y_values) {
      if (!(x < y)) continue;
      GridCell cell;
      cell.x = x;
      cell.y = y;
      Money value_won = 0;
      Money spend = 0;
      for (const AuctionRecord& record : records) {
        const InjectionResult r = inject(record, BlockStrategySpec{x, y});
        value_won += r.value_won;
        spend += r.fee_spent;
        if (denominator == SpendDenominator::fees_plus_price) spend += r.price_paid;
        if (r.won) ++cell.wins;
        ++cell.auctions;
      }
      if (spend > 0) {
        cell.performance = static_cast<double>(value_won) / static_cast<double>(spend);
        cell.defined = true;
      }
      grid.push_back(cell);
    }
  }
  return grid;
}

CdfResult winning_bid_cdf(const std::vector<AuctionRecord>& records) {
  CdfResult out;
  std::vector<double> ratios;
  for (const AuctionRecord& record : records) {
    record.validate();
    if (!record.winner_bid) {
      ++out.excluded;
      continue;
    }
    ratios.push_back(100.0 * static_cast<double>(*record.winner_bid) /
                     static_cast<double>(record.item_value));
  }
  std::sort(ratios.begin(), ratios.end());
  const double n = static_cast<double>(ratios.size());
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const double frac = static_cast<double>(i + 1) / n;
    if (!out.points.empty() && out.points.back().first == ratios[i])
      out.points.back().second = frac;  // collapse equal ratios into one atom
    else
      out.points.emplace_back(ratios[i], frac);
  }
  return out;
}

Bid lowest_free_integer(const AuctionRecord& record) {
  Bid expect = 1;
  for (const auto& [bid, count] : record.counts) {
    if (bid != expect) return expect;
    ++expect;
  }
  return expect;
}

std::vector<std::pair<Bid, std::uint32_t>> multiplicity_histogram(const AuctionRecord& record,
                                                                  Bid lo, Bid hi) {
  if (lo < 1 || lo > hi) throw std::invalid_argument("histogram needs 1 <= lo <= hi");
  std::vector<std::pair<Bid, std::uint32_t>> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  auto it = std::lower_bound(record.counts.begin(), record.counts.end(), lo,
                             [](const auto& entry, Bid b) { return entry.first < b; });
  for (Bid j = lo; j <= hi; ++j) {
    std::uint32_t count = 0;
    if (it != record.counts.end() && it->first == j) {
      count = it->second;
      ++it;
    }
    out.emplace_back(j, count);
  }
  return out;
}

std::int64_t z_statistic(const AuctionRecord& record) {
  Bid expect = 1;
  for (const auto& [bid, count] : record.counts) {
    if (bid != expect || count < 3) break;
    ++expect;
  }
  return expect;
}

std::string item_kind_name(ItemKind kind) {
  return kind == ItemKind::real_item ? "real_item" : "coupon";
}

ItemKind item_kind_from_name(const std::string& name) {
  if (name == "real_item") return ItemKind::real_item;
  if (name == "coupon") return ItemKind::coupon;
  throw std::invalid_argument("unknown item kind: " + name);
}

namespace {

Money money_from_json_euros(const ordered_json& j, const std::string& context) {
  if (!j.is_number()) throw std::invalid_argument(context + " must be a number");
  const double eur = j.get<double>();
  const double scaled = eur * 100.0;
  const Money cents = std::llround(scaled);
  if (std::abs(scaled - static_cast<double>(cents)) > 1e-6)
    throw std::invalid_argument(context + " has sub-cent precision");
  return cents;
}

double euros_json_value(Money cents) { return static_cast<double>(cents) / 100.0; }

AuctionRecord record_from_json(const ordered_json& j, ParseMode mode) {
  static const char* known_fields[] = {"auction_id",  "item_value_eur", "bid_cost_eur",
                                       "item_kind",   "counts",         "winner_bid_cents"};
  if (mode == ParseMode::strict) {
    for (const auto& [key, value] : j.items()) {
      bool known = false;
      for (const char* f : known_fields) known = known || key == f;
      if (!known) throw std::invalid_argument("unknown field: " + key);
    }
  }
  AuctionRecord record;
  record.auction_id = j.at("auction_id").get<std::string>();
  record.item_value = money_from_json_euros(j.at("item_value_eur"), "item_value_eur");
  record.bid_cost = money_from_json_euros(j.at("bid_cost_eur"), "bid_cost_eur");
  record.item_kind = item_kind_from_name(j.at("item_kind").get<std::string>());
  for (const auto& entry : j.at("counts")) {
    if (!entry.is_array() || entry.size() != 2)
      throw std::invalid_argument("counts entries must be [integer_cents, count] pairs");
    record.counts.emplace_back(entry[0].get<Bid>(), entry[1].get<std::uint32_t>());
  }
  const auto& winner = j.at("winner_bid_cents");
  if (!winner.is_null()) record.winner_bid = winner.get<Bid>();

  if (mode == ParseMode::permissive) record.winner_bid = record.recompute_winner();
  record.validate();
  return record;
}

ordered_json record_to_json(const AuctionRecord& record) {
  ordered_json j;
  j["auction_id"] = record.auction_id;
  j["item_value_eur"] = euros_json_value(record.item_value);
  j["bid_cost_eur"] = euros_json_value(record.bid_cost);
  j["item_kind"] = item_kind_name(record.item_kind);
  ordered_json counts = ordered_json::array();
  for (const auto& [bid, count] : record.counts)
    counts.push_back(ordered_json::array({bid, count}));
  j["counts"] = std::move(counts);
  if (record.winner_bid)
    j["winner_bid_cents"] = *record.winner_bid;
  else
    j["winner_bid_cents"] = nullptr;
  return j;
}

}  // namespace

std::vector<AuctionRecord> read_records(std::istream& in, ParseMode mode) {
  std::vector<AuctionRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      records.push_back(record_from_json(ordered_json::parse(line), mode));
    } catch (const std::exception& e) {
      throw std::runtime_error("record line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

std::vector<AuctionRecord> read_records_file(const std::string& path, ParseMode mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open records file: " + path);
  return read_records(in, mode);
}

void write_records(std::ostream& out, const std::vector<AuctionRecord>& records) {
  for (const AuctionRecord& record : records) out << record_to_json(record).dump() << '\n';
}

void write_grid_csv(std::ostream& out, const std::vector<GridCell>& grid) {
  out << "x_pct,y_pct,performance,wins,auctions\n";
  char buf[160];
  for (const GridCell& cell : grid) {
    if (cell.defined)
      std::snprintf(buf, sizeof(buf), "%.6g,%.6g,%.6g,%lld,%lld\n", cell.x, cell.y,
                    cell.performance, static_cast<long long>(cell.wins),
                    static_cast<long long>(cell.auctions));
    else
      std::snprintf(buf, sizeof(buf), "%.6g,%.6g,nan,%lld,%lld\n", cell.x, cell.y,
                    static_cast<long long>(cell.wins), static_cast<long long>(cell.auctions));
    out << buf;
  }
}

}  // namespace luba
