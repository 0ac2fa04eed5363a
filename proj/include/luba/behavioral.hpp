#pragma once

#include "luba/auction_core.hpp"
#include "luba/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

namespace luba {

/// Poisson field of non-strategic bids: integer i receives N_i ~
/// Poisson(lambda_i) bids, independently across i, with
/// lambda_i = (value/bid_cost) * i^-alpha. The field is truncated at `cutoff`,
/// chosen from an integral bound so that the dropped intensity stays below
/// kNoiseTailTarget; the truncation is part of the model and reported with
/// every simulation.
struct NoiseModel {
  Money value = 0;
  Money bid_cost = 0;
  double alpha = 2.0;
  std::int64_t cutoff = 0;
  double total_intensity = 0.0;        // sum of lambda_i up to cutoff
  double tail_intensity_bound = 0.0;   // upper bound on the dropped intensity
  std::vector<double> cumulative;      // cumulative[i] = lambda_1 + ... + lambda_i

  double lambda(std::int64_t i) const;
};

inline constexpr double kNoiseTailTarget = 0.01;
inline constexpr std::int64_t kNoiseCutoffCap = 8'000'000;

/// Builds a noise model. Requires alpha > 1 (the intensity sum diverges
/// otherwise) and a cutoff within kNoiseCutoffCap.
NoiseModel make_noise_model(Money value, Money bid_cost, double alpha);

/// Brute-force strategy: bid every integer 1..depth, depth = floor(gamma *
/// sqrt(value/bid_cost)). depth = 0 degenerates to not participating.
struct BruteForceStrategy {
  double gamma = 1.0;
  Bid depth = 0;
};

BruteForceStrategy brute_force_strategy(double gamma, const NoiseModel& model);

/// One draw of the whole noise field, as per-integer bid counts.
std::map<Bid, std::uint32_t> sample_bid_field(const NoiseModel& model, std::uint64_t seed);

/// Analytic lower bound on the strategist's expected gain:
/// value * exp(-1/gamma^2) - gamma * sqrt(bid_cost * value).
/// Works in any unit as long as value and bid_cost share it.
double gain_lower_bound(double value, double bid_cost, double gamma);

struct GammaOpt {
  double gamma_star = 0.0;
  double bound_at_star = 0.0;
  double foc_residual = 0.0;  // |(2/g^3) e^{-1/g^2} - sqrt(bid_cost/value)|
};

/// Maximizes gain_lower_bound over gamma in [0.1, 20]: a coarse scan brackets
/// the single interior peak, then golden-section refines it to 1e-6. Throws
/// std::domain_error when the maximum sits on a bracket edge.
GammaOpt optimize_gamma(double value, double bid_cost);

struct SimReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  Bid depth = 0;
  std::int64_t cutoff = 0;
  double tail_intensity_bound = 0.0;
  double win_rate = 0.0;
  double win_rate_se = 0.0;
  double any_winner_rate = 0.0;
  double mean_profit_eur = 0.0;
  double mean_profit_se_eur = 0.0;
  double mean_seller_revenue_eur = 0.0;
  double mean_seller_revenue_se_eur = 0.0;
  double mean_total_bids = 0.0;
  double mean_winning_bid_cents = 0.0;     // counts 0 for no-winner trials
  double analytic_win_lower_bound = 0.0;   // exp(-1/gamma^2)
  double expected_noise_fees_eur = 0.0;    // bid_cost * sum of lambda_i
  double expected_noise_fees_2x_eur = 0.0; // variant counting 2*value per i^-alpha unit
};

/// Monte Carlo of the strategist against the noise field. Trial t draws its
/// own RNG stream from (seed, t); identical inputs give bit-identical reports.
SimReport simulate_strategic(const NoiseModel& model, const BruteForceStrategy& strat,
                             std::uint64_t trials, std::uint64_t seed);

/// Writes synthetic auction records (backtest line format) whose bid counts
/// are noise-field draws plus optional block bids at the given (x, y) percent
/// ranges. Returns the number of records written.
std::size_t export_synthetic_records(const NoiseModel& model, std::size_t n_auctions,
                                     const std::vector<std::pair<double, double>>& block_pcts,
                                     std::uint64_t seed, std::ostream& sink);

}  // namespace luba
