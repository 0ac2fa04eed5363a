#pragma once

#include "luba/auction_core.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace luba {

inline constexpr std::uint64_t kDefaultTermBudget = 10'000'000;

/// A probability distribution over pure strategies (bid sets).
struct MixedStrategy {
  std::vector<std::pair<BidSet, double>> support;

  void validate() const;  // probs >= 0, sum to 1 within 1e-12, entries distinct
  bool is_monotone() const;
  static MixedStrategy point_mass(BidSet s);
};

/// Pure-strategy universe for best-response searches: every subset of
/// {1, ..., max_bid} with at most max_set_size elements, or only the empty set
/// and the prefix sets when monotone_only is set.
struct StrategySpace {
  int max_bid = 1;
  int max_set_size = 1;
  bool monotone_only = false;
  void validate() const;
};

struct BudgetExceededError : std::runtime_error {
  explicit BudgetExceededError(std::uint64_t term_count);
  std::uint64_t terms;
};

/// Exact expected payoff of every bidder under the product of the given mixed
/// strategies. Enumerates the full support product; throws BudgetExceededError
/// when that product has more than `term_budget` terms.
std::vector<double> expected_payoffs(const std::vector<MixedStrategy>& profile,
                                     const AuctionConfig& config,
                                     std::uint64_t term_budget = kDefaultTermBudget);

/// Exact expected payoff of the seller under the product distribution.
double expected_seller_payoff(const std::vector<MixedStrategy>& profile,
                              const AuctionConfig& config,
                              std::uint64_t term_budget = kDefaultTermBudget);

struct BestResponse {
  double value = 0.0;
  std::vector<BidSet> argmax;  // every maximizer, in lexicographic order
};

/// Best pure response of one player against the other bidders' mixed
/// strategies. `others` lists the opponents in bidder order with the player's
/// own slot removed; `player` is the player's index in the full profile.
BestResponse best_response(int player, const std::vector<MixedStrategy>& others,
                           const StrategySpace& space, const AuctionConfig& config,
                           std::uint64_t term_budget = kDefaultTermBudget);

struct NashReport {
  bool is_eq = false;
  double worst_gain = 0.0;
  int deviating_player = -1;
  BidSet deviation;               // best deviation of the worst-off player
  std::vector<double> expected;   // expected payoff of each bidder under the profile
  double seller_expected = 0.0;
};

/// Checks that no player gains more than eps by any pure deviation in `space`.
NashReport epsilon_nash_check(const std::vector<MixedStrategy>& profile,
                              const StrategySpace& space, const AuctionConfig& config,
                              double eps, std::uint64_t term_budget = kDefaultTermBudget);

/// Splits a non-prefix bid set at its lowest gap l (l missing, l+1 present):
/// first = the set with l+1 moved down to l, second = the set truncated below l.
/// Throws std::domain_error when the set is already a prefix set.
std::pair<BidSet, BidSet> monotone_dominance_transform(const BidSet& s);

}  // namespace luba
