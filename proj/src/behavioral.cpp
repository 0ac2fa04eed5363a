#include "luba/behavioral.hpp"

#include "luba/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

namespace luba {

double NoiseModel::lambda(std::int64_t i) const {
  if (i < 1) throw std::invalid_argument("intensity defined for integers >= 1");
  return static_cast<double>(value) / static_cast<double>(bid_cost) *
         std::pow(static_cast<double>(i), -alpha);
}

NoiseModel make_noise_model(Money value, Money bid_cost, double alpha) {
  if (value <= 0 || bid_cost <= 0)
    throw std::invalid_argument("value and bid cost must be positive");
  if (!(alpha > 1.0))
    throw std::domain_error("alpha must exceed 1: the bid intensity is not summable otherwise");

  NoiseModel model;
  model.value = value;
  model.bid_cost = bid_cost;
  model.alpha = alpha;

  const double ratio = static_cast<double>(value) / static_cast<double>(bid_cost);
  // integral bound: sum_{i>M} i^-alpha <= M^(1-alpha)/(alpha-1); pick the
  // smallest M that provably drops less than kNoiseTailTarget intensity.
  const double target = kNoiseTailTarget / ratio * (alpha - 1.0);
  const double m = std::pow(target, -1.0 / (alpha - 1.0));
  if (!(m < static_cast<double>(kNoiseCutoffCap)))
    throw std::domain_error(
        "noise cutoff beyond cap (" + std::to_string(kNoiseCutoffCap) +
        "); raise alpha or shrink value/bid_cost");
  const auto tail_bound = [&](std::int64_t cut) {
    return ratio * std::pow(static_cast<double>(cut), 1.0 - alpha) / (alpha - 1.0);
  };
  model.cutoff = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(m)));
  while (tail_bound(model.cutoff) >= kNoiseTailTarget) ++model.cutoff;

  model.cumulative.resize(static_cast<std::size_t>(model.cutoff) + 1);
  model.cumulative[0] = 0.0;
  double sum = 0.0;
  for (std::int64_t i = 1; i <= model.cutoff; ++i) {
    sum += ratio * std::pow(static_cast<double>(i), -alpha);
    model.cumulative[static_cast<std::size_t>(i)] = sum;
  }
  model.total_intensity = sum;
  model.tail_intensity_bound = tail_bound(model.cutoff);
  return model;
}

BruteForceStrategy brute_force_strategy(double gamma, const NoiseModel& model) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  const double ratio = static_cast<double>(model.value) / static_cast<double>(model.bid_cost);
  BruteForceStrategy strat;
  strat.gamma = gamma;
  strat.depth = static_cast<Bid>(std::floor(gamma * std::sqrt(ratio)));
  return strat;
}

namespace {

// One field draw. The total count is Poisson(total intensity); each bid then
// lands on integer i with probability lambda_i / total, via the cumulative
// table. By Poisson superposition this is exactly the law of independent
// per-integer Poisson counts, at O(total) cost per draw instead of O(cutoff).
void sample_field_sorted(const NoiseModel& model, Rng& rng, std::vector<Bid>& out) {
  out.clear();
  const std::int64_t total = sample_poisson(rng, model.total_intensity);
  out.reserve(static_cast<std::size_t>(total));
  const auto begin = model.cumulative.begin() + 1;
  const auto end = model.cumulative.end();
  for (std::int64_t t = 0; t < total; ++t) {
    const double u = rng.uniform01() * model.total_intensity;
    auto it = std::upper_bound(begin, end, u);
    if (it == end) --it;  // guard the u == total edge
    out.push_back(static_cast<Bid>(it - begin) + 1);
  }
  std::sort(out.begin(), out.end());
}

struct TrialOutcome {
  bool strategist_won = false;
  bool any_winner = false;
  Bid winning_bid = 0;
  std::int64_t noise_bids = 0;
};

// Resolves one trial: the strategist holds 1..depth, every noise bid belongs
// to its own phantom bidder, so integer i is unique iff its total count is 1.
TrialOutcome resolve_trial(const std::vector<Bid>& field, Bid depth) {
  TrialOutcome out;
  out.noise_bids = static_cast<std::int64_t>(field.size());

  // smallest integer in [1, depth] with no noise bids: the strategist's win
  Bid gap = 0;
  {
    Bid expect = 1;
    for (std::size_t k = 0; k < field.size() && expect <= depth; ++k) {
      if (field[k] > expect) break;
      if (field[k] == expect) ++expect;
    }
    if (expect <= depth) gap = expect;
  }
  if (gap > 0) {
    out.strategist_won = true;
    out.any_winner = true;
    out.winning_bid = gap;
    return out;
  }
  // otherwise the lowest single-count noise integer above depth wins
  std::size_t k = 0;
  while (k < field.size()) {
    std::size_t k2 = k;
    while (k2 < field.size() && field[k2] == field[k]) ++k2;
    if (field[k] > depth && k2 - k == 1) {
      out.any_winner = true;
      out.winning_bid = field[k];
      return out;
    }
    k = k2;
  }
  return out;
}

}  // namespace

std::map<Bid, std::uint32_t> sample_bid_field(const NoiseModel& model, std::uint64_t seed) {
  Rng rng(seed, 0);
  std::vector<Bid> field;
  sample_field_sorted(model, rng, field);
  std::map<Bid, std::uint32_t> counts;
  for (Bid b : field) ++counts[b];
  return counts;
}

double gain_lower_bound(double value, double bid_cost, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  return value * std::exp(-1.0 / (gamma * gamma)) - gamma * std::sqrt(bid_cost * value);
}

namespace {

double foc_residual_at(double value, double bid_cost, double g) {
  return std::abs(2.0 / (g * g * g) * std::exp(-1.0 / (g * g)) -
                  std::sqrt(bid_cost / value));
}

}  // namespace

GammaOpt optimize_gamma(double value, double bid_cost) {
  if (!(value > 0.0) || !(bid_cost > 0.0))
    throw std::invalid_argument("value and bid cost must be positive");
  if (!(value / bid_cost > 1.0))
    throw std::invalid_argument("optimize_gamma needs value/bid_cost > 1");

  const auto f = [&](double g) { return gain_lower_bound(value, bid_cost, g); };

  constexpr double kLo = 0.1, kHi = 20.0;
  constexpr int kScanSteps = 400;
  int best_i = 0;
  double best_f = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kScanSteps; ++i) {
    const double g = kLo + (kHi - kLo) * static_cast<double>(i) / kScanSteps;
    const double fi = f(g);
    if (fi > best_f) {
      best_f = fi;
      best_i = i;
    }
  }
  if (best_i == 0 || best_i == kScanSteps)
    throw std::domain_error("gain bound has no interior maximum on [0.1, 20]");

  double a = kLo + (kHi - kLo) * static_cast<double>(best_i - 1) / kScanSteps;
  double b = kLo + (kHi - kLo) * static_cast<double>(best_i + 1) / kScanSteps;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c1 = b - phi * (b - a);
  double d1 = a + phi * (b - a);
  double fc = f(c1), fd = f(d1);
  while (b - a > 1e-6) {
    if (fc > fd) {
      b = d1;
      d1 = c1;
      fd = fc;
      c1 = b - phi * (b - a);
      fc = f(c1);
    } else {
      a = c1;
      c1 = d1;
      fc = fd;
      d1 = a + phi * (b - a);
      fd = f(d1);
    }
  }

  GammaOpt out;
  out.gamma_star = (a + b) / 2.0;
  out.bound_at_star = f(out.gamma_star);
  out.foc_residual = foc_residual_at(value, bid_cost, out.gamma_star);
  return out;
}

SimReport simulate_strategic(const NoiseModel& model, const BruteForceStrategy& strat,
                             std::uint64_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  if (strat.depth < 0) throw std::invalid_argument("strategy depth must be >= 0");

  const double c_eur = cents_to_euros(model.bid_cost);
  const double v_eur = cents_to_euros(model.value);
  const double fee_eur = c_eur * static_cast<double>(strat.depth);

  double wins = 0, any_wins = 0;
  double profit_sum = 0, profit_sq = 0;
  double seller_sum = 0, seller_sq = 0;
  double total_bids_sum = 0;
  double winning_bid_sum = 0;

  std::vector<Bid> field;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(seed, t);
    sample_field_sorted(model, rng, field);
    const TrialOutcome outcome = resolve_trial(field, strat.depth);

    const double total_bids = static_cast<double>(outcome.noise_bids + strat.depth);
    double profit = -fee_eur;
    if (outcome.strategist_won) {
      wins += 1.0;
      profit += v_eur - cents_to_euros(outcome.winning_bid);
    }
    double seller = c_eur * total_bids;
    if (outcome.any_winner) {
      any_wins += 1.0;
      seller += cents_to_euros(outcome.winning_bid) - v_eur;
      winning_bid_sum += static_cast<double>(outcome.winning_bid);
    }
    profit_sum += profit;
    profit_sq += profit * profit;
    seller_sum += seller;
    seller_sq += seller * seller;
    total_bids_sum += total_bids;
  }

  const double n = static_cast<double>(trials);
  const auto se = [&](double sum, double sq) {
    const double mean = sum / n;
    const double var = std::max(0.0, sq / n - mean * mean);
    return std::sqrt(var / n);
  };

  SimReport report;
  report.trials = trials;
  report.seed = seed;
  report.depth = strat.depth;
  report.cutoff = model.cutoff;
  report.tail_intensity_bound = model.tail_intensity_bound;
  report.win_rate = wins / n;
  report.win_rate_se = std::sqrt(std::max(0.0, report.win_rate * (1.0 - report.win_rate)) / n);
  report.any_winner_rate = any_wins / n;
  report.mean_profit_eur = profit_sum / n;
  report.mean_profit_se_eur = se(profit_sum, profit_sq);
  report.mean_seller_revenue_eur = seller_sum / n;
  report.mean_seller_revenue_se_eur = se(seller_sum, seller_sq);
  report.mean_total_bids = total_bids_sum / n;
  report.mean_winning_bid_cents = winning_bid_sum / n;
  report.analytic_win_lower_bound = std::exp(-1.0 / (strat.gamma * strat.gamma));
  const double sum_inv_pow =
      model.total_intensity * static_cast<double>(model.bid_cost) / static_cast<double>(model.value);
  report.expected_noise_fees_eur = c_eur * model.total_intensity;
  report.expected_noise_fees_2x_eur = 2.0 * v_eur * sum_inv_pow;
  return report;
}

std::size_t export_synthetic_records(const NoiseModel& model, std::size_t n_auctions,
                                     const std::vector<std::pair<double, double>>& block_pcts,
                                     std::uint64_t seed, std::ostream& sink) {
  std::vector<std::vector<Bid>> blocks;
  blocks.reserve(block_pcts.size());
  for (const auto& [x, y] : block_pcts)
    blocks.push_back(block_bids(BlockStrategySpec{x, y}, model.value));

  std::vector<AuctionRecord> records;
  records.reserve(n_auctions);
  std::vector<Bid> field;
  for (std::size_t r = 0; r < n_auctions; ++r) {
    Rng rng(seed, r);
    sample_field_sorted(model, rng, field);

    AuctionRecord record;
    char id[32];
    std::snprintf(id, sizeof(id), "synthetic-%06zu", r);
    record.auction_id = id;
    record.item_value = model.value;
    record.bid_cost = model.bid_cost;
    record.item_kind = ItemKind::real_item;

    std::map<Bid, std::uint32_t> counts;
    for (Bid b : field) ++counts[b];
    for (const std::vector<Bid>& block : blocks)
      for (Bid b : block) ++counts[b];
    record.counts.assign(counts.begin(), counts.end());
    record.winner_bid = record.recompute_winner();
    records.push_back(std::move(record));
  }
  write_records(sink, records);
  return records.size();
}

}  // namespace luba
