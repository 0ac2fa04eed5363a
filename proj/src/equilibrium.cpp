#include "luba/equilibrium.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace luba {

namespace {

// Exact small-integer power; std::pow(1.5, 2.0) is not guaranteed exact.
double ipow(double base, int exp) {
  double out = 1.0;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

double MonotoneMixedStrategy::prob_prefix(int l) const {
  if (l == 0) return p_empty;
  if (l < 1 || l > depth()) return 0.0;
  return p[static_cast<std::size_t>(l - 1)];
}

MixedStrategy MonotoneMixedStrategy::to_mixed() const {
  MixedStrategy out;
  out.support.reserve(p.size() + 1);
  out.support.emplace_back(BidSet(), p_empty);
  for (int l = 1; l <= depth(); ++l)
    out.support.emplace_back(BidSet::prefix(l), p[static_cast<std::size_t>(l - 1)]);
  return out;
}

void MonotoneMixedStrategy::validate() const {
  double sum = p_empty;
  if (p_empty < 0.0 || p_empty > 1.0) throw std::invalid_argument("p_empty out of [0, 1]");
  for (double q : p) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("prefix probability out of [0, 1]");
    sum += q;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("probabilities sum to " + std::to_string(sum));
  if (!p.empty() && p.back() <= 0.0)
    throw std::invalid_argument("deepest prefix must have positive probability");
}

MonotoneMixedStrategy two_bidder_symmetric(Money value, Money bid_cost) {
  if (value <= 0 || bid_cost <= 0)
    throw std::invalid_argument("value and bid cost must be positive");
  if (bid_cost >= value - 1)
    throw std::domain_error(
        "degenerate input: bid_cost >= value - 1 puts all probability on staying out");

  const double c = static_cast<double>(bid_cost);
  const double v = static_cast<double>(value);

  // N = largest integer with c/(v-1) + ... + c/(v-N) < 1. Ties at machine
  // precision classify as "not < 1": the strict inequality wins.
  constexpr double kGuard = 1e-12;
  double sum = 0.0;
  int depth = 0;
  while (depth + 1 < value) {
    const double term = c / (v - static_cast<double>(depth + 1));
    if (sum + term >= 1.0 - kGuard) break;
    sum += term;
    ++depth;
  }
  if (depth < 1) throw std::domain_error("degenerate input: no admissible prefix depth");

  MonotoneMixedStrategy strat;
  strat.p_empty = c / (v - 1.0);
  strat.p.resize(static_cast<std::size_t>(depth));
  for (int l = 1; l < depth; ++l)
    strat.p[static_cast<std::size_t>(l - 1)] = c / (v - static_cast<double>(l + 1));
  strat.p[static_cast<std::size_t>(depth - 1)] = 1.0 - sum;
  strat.validate();
  return strat;
}

NonexistenceCertificate noneq_certificate(int k, Money value, Money bid_cost) {
  if (k < 3) throw std::domain_error("certificate requires at least three bidders");
  if (bid_cost <= 0 || value <= 0)
    throw std::invalid_argument("value and bid cost must be positive");
  if (value <= 2 * bid_cost + 2 || value <= 10)
    throw std::domain_error("certificate requires value > max(2*bid_cost + 2, 10)");

  const double c = static_cast<double>(bid_cost);
  const double v = static_cast<double>(value);
  const double root = 1.0 / static_cast<double>(k - 1);

  NonexistenceCertificate cert;
  cert.k = k;
  cert.value = value;
  cert.bid_cost = bid_cost;
  cert.x_empty = std::pow(c / (v - 1.0), root);
  cert.x_1 = std::pow(c / (v - 2.0) + c / (v - 1.0), root) - cert.x_empty;
  cert.lhs = 2.0 * (1.0 + 1.0 / (v - 2.0));
  cert.rhs = ipow(1.0 + 1.0 / static_cast<double>(k - 1), k - 1);
  cert.necessary_holds = cert.lhs >= cert.rhs;
  return cert;
}

std::vector<MixedStrategy> asymmetric_example_profile(int n, Money value, Money bid_cost) {
  if (n < 2) throw std::invalid_argument("profile needs at least two bidders");
  if (value <= 0 || bid_cost <= 0)
    throw std::invalid_argument("value and bid cost must be positive");
  std::vector<MixedStrategy> profile;
  profile.reserve(static_cast<std::size_t>(n));
  profile.push_back(MixedStrategy::point_mass(BidSet({1})));
  for (int i = 1; i < n; ++i)
    profile.push_back(MixedStrategy{{{BidSet({1, 2}), 0.5}, {BidSet(), 0.5}}});
  return profile;
}

std::int64_t min_high_bid_bound(double value, double bid_cost) {
  if (!(value > 0.0) || !(bid_cost > 0.0))
    throw std::invalid_argument("value and bid cost must be positive");
  return static_cast<std::int64_t>(std::ceil(value / (bid_cost + 1.0) - 1.0));
}

}  // namespace luba
