#pragma once

#include "luba/oracle.hpp"

#include <vector>

namespace luba {

/// Mixed strategy supported on the empty set and prefix sets {1, ..., l}.
struct MonotoneMixedStrategy {
  double p_empty = 1.0;
  std::vector<double> p;  // p[l-1] = probability of bidding {1, ..., l}

  int depth() const { return static_cast<int>(p.size()); }
  double prob_prefix(int l) const;  // l = 0 selects the empty set
  MixedStrategy to_mixed() const;
  void validate() const;
};

/// The unique symmetric two-bidder equilibrium strategy. `value` and
/// `bid_cost` are expressed in the bid unit (cents). Throws std::domain_error
/// when bid_cost >= value - 1, where the closed form degenerates.
MonotoneMixedStrategy two_bidder_symmetric(Money value, Money bid_cost);

/// Numeric certificate that no symmetric equilibrium in monotone strategies
/// exists for k >= 3 bidders: the necessary condition
///   2 * (1 + 1/(v-2)) >= (1 + 1/(k-1))^(k-1)
/// must hold in such an equilibrium, and fails for every admissible input.
struct NonexistenceCertificate {
  int k = 0;
  Money value = 0;
  Money bid_cost = 0;
  double x_empty = 0.0;  // implied probability of staying out
  double x_1 = 0.0;      // implied probability of bidding {1}
  double lhs = 0.0;      // left side of the necessary condition
  double rhs = 0.0;      // right side of the necessary condition
  bool necessary_holds = false;

  bool certified() const { return !necessary_holds; }
};

/// Requires k >= 3 and value > max(2*bid_cost + 2, 10); throws
/// std::domain_error otherwise.
NonexistenceCertificate noneq_certificate(int k, Money value, Money bid_cost);

/// Asymmetric profile in which bidder 0 always bids {1} and every other bidder
/// mixes evenly between {1,2} and staying out. Construction only: whether the
/// profile is an equilibrium for given (n, value, cost) is the caller's job,
/// via the oracle.
std::vector<MixedStrategy> asymmetric_example_profile(int n, Money value, Money bid_cost);

/// Smallest integer bid that must appear in equilibrium when the number of
/// bidders exceeds value/bid_cost: ceil(value/(bid_cost+1) - 1). Units of
/// value and bid_cost must match the bid unit.
std::int64_t min_high_bid_bound(double value, double bid_cost);

}  // namespace luba
