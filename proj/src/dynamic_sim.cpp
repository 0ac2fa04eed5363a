#include "luba/dynamic_sim.hpp"

#include "luba/behavioral.hpp"
#include "luba/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <utility>

namespace luba {

namespace {
using ordered_json = nlohmann::ordered_json;
}

std::string feedback_name(BidFeedback feedback) {
  switch (feedback) {
    case BidFeedback::LOWEST_UNIQUE: return "LOWEST_UNIQUE";
    case BidFeedback::UNIQUE_NOT_LOWEST: return "UNIQUE_NOT_LOWEST";
    case BidFeedback::NOT_UNIQUE: return "NOT_UNIQUE";
  }
  throw std::logic_error("unreachable feedback value");
}

SubmitError::SubmitError(Kind kind_, const std::string& what)
    : std::runtime_error(what), kind(kind_) {}

AuctionEngine::AuctionEngine(AuctionConfig config, std::int64_t horizon,
                             std::vector<Money> budgets)
    : remaining_(std::move(budgets)) {
  config.n = static_cast<int>(remaining_.size());
  config.validate();
  if (horizon < 1) throw std::invalid_argument("horizon must be at least one tick");
  state_.config = config;
  state_.horizon = horizon;
  own_.resize(remaining_.size());
  accepted_.assign(remaining_.size(), 0);
  for (Money b : remaining_)
    if (b < 0) throw std::invalid_argument("budgets must be non-negative");
}

BidFeedback AuctionEngine::submit(int bidder, Bid amount) {
  if (bidder < 0 || bidder >= static_cast<int>(own_.size()))
    throw std::invalid_argument("bidder index out of range");
  if (amount < 1) throw std::invalid_argument("bid amounts are positive integers");
  if (closed())
    throw SubmitError(SubmitError::Kind::auction_closed, "auction is closed");
  auto& own = own_[static_cast<std::size_t>(bidder)];
  if (own.contains(amount))
    throw SubmitError(SubmitError::Kind::duplicate_own_bid,
                      "bidder already bid " + std::to_string(amount));
  Money& budget = remaining_[static_cast<std::size_t>(bidder)];
  if (state_.config.bid_cost > budget)
    throw SubmitError(SubmitError::Kind::budget_exhausted, "budget exhausted");

  budget -= state_.config.bid_cost;
  own.insert(amount);
  accepted_[static_cast<std::size_t>(bidder)] += 1;
  auto& entries = state_.book[amount];
  entries.push_back({bidder, next_arrival_++});
  if (entries.size() == 1)
    unique_amounts_.insert(amount);
  else if (entries.size() == 2)
    unique_amounts_.erase(amount);

  BidFeedback feedback;
  if (entries.size() >= 2)
    feedback = BidFeedback::NOT_UNIQUE;
  else if (*unique_amounts_.begin() == amount)
    feedback = BidFeedback::LOWEST_UNIQUE;
  else
    feedback = BidFeedback::UNIQUE_NOT_LOWEST;

  transcript_.push_back({state_.clock, bidder, amount, feedback_name(feedback)});
  return feedback;
}

BidFeedback AuctionEngine::status_of(int bidder, Bid amount) const {
  if (bidder < 0 || bidder >= static_cast<int>(own_.size()))
    throw std::invalid_argument("bidder index out of range");
  if (!own_[static_cast<std::size_t>(bidder)].contains(amount))
    throw SubmitError(SubmitError::Kind::not_own_bid,
                      "bidder never bid " + std::to_string(amount));
  const auto it = state_.book.find(amount);
  if (it->second.size() >= 2) return BidFeedback::NOT_UNIQUE;
  return *unique_amounts_.begin() == amount ? BidFeedback::LOWEST_UNIQUE
                                            : BidFeedback::UNIQUE_NOT_LOWEST;
}

void AuctionEngine::advance() { state_.clock += 1; }

const std::set<Bid>& AuctionEngine::own_bids(int bidder) const {
  return own_.at(static_cast<std::size_t>(bidder));
}

int AuctionEngine::count(Bid amount) const {
  const auto it = state_.book.find(amount);
  return it == state_.book.end() ? 0 : static_cast<int>(it->second.size());
}

std::optional<Bid> AuctionEngine::lowest_unique() const {
  if (unique_amounts_.empty()) return std::nullopt;
  return *unique_amounts_.begin();
}

Money AuctionEngine::remaining_budget(int bidder) const {
  return remaining_.at(static_cast<std::size_t>(bidder));
}

std::int64_t AuctionEngine::accepted_bids(int bidder) const {
  return accepted_.at(static_cast<std::size_t>(bidder));
}

BidProfile AuctionEngine::book_as_profile() const {
  BidProfile profile;
  profile.sets.reserve(own_.size());
  for (const std::set<Bid>& own : own_)
    profile.sets.push_back(BidSet(std::vector<Bid>(own.begin(), own.end())));
  return profile;
}

Outcome AuctionEngine::final_outcome() const { return resolve(book_as_profile()); }

void AuctionEngine::record_rejection(int bidder, Bid amount, const std::string& reason) {
  transcript_.push_back({state_.clock, bidder, amount, "rejected:" + reason});
}

void AgentSpec::validate() const {
  if (budget < 0) throw std::invalid_argument("agent budget must be non-negative");
  switch (kind) {
    case Kind::noisy_poisson:
      if (!(alpha > 1.0)) throw std::invalid_argument("noisy agent needs alpha > 1");
      break;
    case Kind::block:
      BlockStrategySpec{x_pct, y_pct}.validate();
      break;
    case Kind::interval_dynamic:
      if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("quantile q must lie in (0, 1)");
      if (probe_count < 0) throw std::invalid_argument("probe_count must be >= 0");
      if (probe_budget < 0) throw std::invalid_argument("probe_budget must be >= 0");
      if (end_margin < 1) throw std::invalid_argument("end_margin must be >= 1");
      if (calibrated_x < 1) throw std::invalid_argument("calibrated x must be >= 1");
      break;
  }
}

namespace {

const char* rejection_reason(SubmitError::Kind kind) {
  switch (kind) {
    case SubmitError::Kind::duplicate_own_bid: return "duplicate_own_bid";
    case SubmitError::Kind::budget_exhausted: return "budget_exhausted";
    case SubmitError::Kind::auction_closed: return "auction_closed";
    case SubmitError::Kind::not_own_bid: return "not_own_bid";
  }
  return "unknown";
}

// submit wrapper that records rejections in the transcript instead of failing
bool try_submit(AuctionEngine& engine, int bidder, Bid amount) {
  try {
    engine.submit(bidder, amount);
    return true;
  } catch (const SubmitError& e) {
    engine.record_rejection(bidder, amount, rejection_reason(e.kind));
    return false;
  }
}

struct NoisyAgentState {
  NoiseModel model;
  double per_tick_intensity = 0.0;
};

struct IntervalAgentState {
  int probes_placed = 0;
  Money probe_spent = 0;
};

void act_noisy(AuctionEngine& engine, int idx, NoisyAgentState& st, Rng& rng) {
  const std::int64_t draws = sample_poisson(rng, st.per_tick_intensity);
  const auto begin = st.model.cumulative.begin() + 1;
  const auto end = st.model.cumulative.end();
  for (std::int64_t d = 0; d < draws; ++d) {
    const double u = rng.uniform01() * st.model.total_intensity;
    auto it = std::upper_bound(begin, end, u);
    if (it == end) --it;
    const Bid amount = static_cast<Bid>(it - begin) + 1;
    // a single bidder cannot repeat an amount; redraws on own amounts are dropped
    if (engine.own_bids(idx).contains(amount)) continue;
    try_submit(engine, idx, amount);
  }
}

void act_block(AuctionEngine& engine, int idx, const AgentSpec& spec) {
  if (engine.clock() != engine.horizon() - 1) return;  // last-moment bidder
  for (Bid amount : block_bids(BlockStrategySpec{spec.x_pct, spec.y_pct},
                               engine.state().config.value)) {
    if (engine.remaining_budget(idx) < engine.state().config.bid_cost) {
      engine.record_rejection(idx, amount, "budget_exhausted");
      break;
    }
    try_submit(engine, idx, amount);
  }
}

void act_interval(AuctionEngine& engine, int idx, const AgentSpec& spec,
                  IntervalAgentState& st, Rng& rng) {
  const Money cost = engine.state().config.bid_cost;
  const bool final_phase = engine.clock() >= engine.horizon() - spec.end_margin;

  if (!final_phase) {
    // probing: one random amount per tick in (x, 3x], until the probe count
    // or the probe budget runs out
    if (st.probes_placed >= spec.probe_count) return;
    if (spec.probe_budget > 0 && st.probe_spent + cost > spec.probe_budget) return;
    const Bid lo = spec.calibrated_x + 1;
    const Bid hi = spec.calibrated_x * 3;
    if (hi < lo) return;
    for (int attempt = 0; attempt < 16; ++attempt) {
      const Bid amount = rng.uniform_int(lo, hi);
      if (engine.own_bids(idx).contains(amount)) continue;
      if (try_submit(engine, idx, amount)) {
        ++st.probes_placed;
        st.probe_spent += cost;
      }
      return;
    }
    return;
  }

  // final phase: y = lowest own amount still held by this bidder alone
  std::optional<Bid> y;
  for (Bid own : engine.own_bids(idx)) {
    if (engine.status_of(idx, own) != BidFeedback::NOT_UNIQUE) {
      y = own;
      break;
    }
  }
  if (!y) return;  // every probe was killed: abstain

  const auto kill_range = [&](Bid lo, Bid hi) {
    for (Bid amount = lo; amount <= hi; ++amount) {
      if (engine.own_bids(idx).contains(amount)) continue;
      if (engine.remaining_budget(idx) < cost) {
        engine.record_rejection(idx, amount, "budget_exhausted");
        return false;
      }
      try_submit(engine, idx, amount);
    }
    return true;
  };

  if (!kill_range(spec.calibrated_x, *y - 1)) return;

  if (spec.extend_above_y) {
    Bid prev = *y;
    for (Bid own : engine.own_bids(idx)) {
      if (own <= prev) continue;
      if (engine.status_of(idx, own) == BidFeedback::NOT_UNIQUE) continue;
      if (!kill_range(prev + 1, own - 1)) return;
      prev = own;
    }
  }
}

}  // namespace

RunResult run_auction(const std::vector<AgentSpec>& agents, const AuctionConfig& config,
                      std::int64_t horizon, std::uint64_t seed) {
  if (agents.empty()) throw std::invalid_argument("need at least one agent");
  for (const AgentSpec& spec : agents) spec.validate();

  std::vector<Money> budgets;
  budgets.reserve(agents.size());
  for (const AgentSpec& spec : agents) budgets.push_back(spec.budget);

  AuctionEngine engine(config, horizon, std::move(budgets));

  std::vector<Rng> rngs;
  std::vector<NoisyAgentState> noisy(agents.size());
  std::vector<IntervalAgentState> interval(agents.size());
  for (std::size_t i = 0; i < agents.size(); ++i) {
    rngs.emplace_back(seed, i);
    if (agents[i].kind == AgentSpec::Kind::noisy_poisson) {
      noisy[i].model = make_noise_model(config.value, config.bid_cost, agents[i].alpha);
      noisy[i].per_tick_intensity =
          noisy[i].model.total_intensity / static_cast<double>(horizon);
    }
  }

  for (std::int64_t tick = 0; tick < horizon; ++tick) {
    for (std::size_t i = 0; i < agents.size(); ++i) {
      const int idx = static_cast<int>(i);
      switch (agents[i].kind) {
        case AgentSpec::Kind::noisy_poisson:
          act_noisy(engine, idx, noisy[i], rngs[i]);
          break;
        case AgentSpec::Kind::block:
          act_block(engine, idx, agents[i]);
          break;
        case AgentSpec::Kind::interval_dynamic:
          act_interval(engine, idx, agents[i], interval[i], rngs[i]);
          break;
      }
    }
    engine.advance();
  }

  RunResult result;
  result.outcome = engine.final_outcome();
  result.transcript = engine.transcript();
  result.agent_money.resize(agents.size());
  for (std::size_t i = 0; i < agents.size(); ++i) {
    Money u = -config.bid_cost * engine.accepted_bids(static_cast<int>(i));
    if (result.outcome.winner && *result.outcome.winner == static_cast<int>(i))
      u += config.value - *result.outcome.winning_bid;
    result.agent_money[i] = u;
  }
  return result;
}

Bid calibrate_x(const std::vector<AuctionRecord>& history, double q) {
  if (history.empty()) throw std::invalid_argument("calibration needs a non-empty history");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("quantile q must lie in (0, 1)");
  std::vector<std::int64_t> zs;
  zs.reserve(history.size());
  for (const AuctionRecord& record : history) zs.push_back(z_statistic(record));
  std::sort(zs.begin(), zs.end());
  // lower empirical quantile: smallest order statistic with cum fraction >= q
  const double n = static_cast<double>(zs.size());
  std::size_t rank = static_cast<std::size_t>(std::ceil(q * n - 1e-9));
  rank = std::min(std::max<std::size_t>(rank, 1), zs.size());
  return zs[rank - 1];
}

void write_transcript(std::ostream& out, const RunResult& result) {
  for (const TranscriptEvent& e : result.transcript) {
    ordered_json j;
    j["tick"] = e.tick;
    j["bidder"] = e.bidder;
    j["amount_cents"] = e.amount;
    j["feedback"] = e.feedback;
    out << j.dump() << '\n';
  }
  ordered_json footer;
  ordered_json outcome;
  if (result.outcome.winner) {
    outcome["winner"] = *result.outcome.winner;
    outcome["winning_bid_cents"] = *result.outcome.winning_bid;
  } else {
    outcome["winner"] = nullptr;
    outcome["winning_bid_cents"] = nullptr;
  }
  footer["outcome"] = std::move(outcome);
  footer["agent_money_cents"] = result.agent_money;
  out << footer.dump() << '\n';
}

void replay_transcript(const std::vector<TranscriptEvent>& events, const AuctionConfig& config,
                       std::int64_t horizon, const std::vector<Money>& budgets) {
  AuctionEngine engine(config, horizon, budgets);
  for (const TranscriptEvent& e : events) {
    while (engine.clock() < e.tick) engine.advance();
    std::string got;
    try {
      got = feedback_name(engine.submit(e.bidder, e.amount));
    } catch (const SubmitError& err) {
      got = std::string("rejected:") + rejection_reason(err.kind);
    }
    if (got != e.feedback)
      throw std::runtime_error("replay mismatch at tick " + std::to_string(e.tick) + " bidder " +
                               std::to_string(e.bidder) + " amount " + std::to_string(e.amount) +
                               ": recorded " + e.feedback + ", replayed " + got);
  }
}

}  // namespace luba
