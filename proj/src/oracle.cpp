#include "luba/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

namespace luba {

namespace {

constexpr int kMaxOracleBid = 63;
constexpr double kTieTolerance = 1e-9;

std::uint64_t to_mask(const BidSet& s) {
  std::uint64_t m = 0;
  for (Bid b : s.values()) {
    if (b > kMaxOracleBid)
      throw std::domain_error("oracle handles bids up to 63, got " + std::to_string(b));
    m |= 1ull << (b - 1);
  }
  return m;
}

BidSet mask_to_set(std::uint64_t m) {
  std::vector<Bid> v;
  while (m) {
    v.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return BidSet(std::move(v));
}

struct Atom {
  std::uint64_t mask;
  double prob;
  int card;
};

std::vector<Atom> compile(const MixedStrategy& s) {
  s.validate();
  std::vector<Atom> atoms;
  atoms.reserve(s.support.size());
  for (const auto& [set, prob] : s.support)
    atoms.push_back({to_mask(set), prob, static_cast<int>(set.size())});
  return atoms;
}

void check_budget(std::uint64_t lhs, std::uint64_t rhs, std::uint64_t budget) {
  // guard lhs * rhs <= budget without overflow
  if (lhs == 0 || rhs == 0) return;
  if (lhs > budget / rhs)
    throw BudgetExceededError(lhs > std::numeric_limits<std::uint64_t>::max() / rhs
                                  ? std::numeric_limits<std::uint64_t>::max()
                                  : lhs * rhs);
}

// Opponent-side product distribution, flattened in odometer order (last
// strategy's index varies fastest). `once`/`multi` track which integers were
// bid exactly once / more than once among the opponents.
struct Combo {
  double prob;
  std::uint64_t once;
  std::uint64_t multi;
};

std::vector<Combo> flatten(const std::vector<std::vector<Atom>>& strats) {
  std::vector<Combo> combos{{1.0, 0, 0}};
  for (const auto& atoms : strats) {
    std::vector<Combo> next;
    next.reserve(combos.size() * atoms.size());
    for (const Combo& c : combos) {
      for (const Atom& a : atoms) {
        next.push_back({c.prob * a.prob, c.once | a.mask,
                        c.multi | (c.once & a.mask)});
      }
    }
    combos = std::move(next);
  }
  return combos;
}

struct Expectations {
  std::vector<double> bidder;
  double seller = 0.0;
};

Expectations expectations(const std::vector<MixedStrategy>& profile,
                          const AuctionConfig& config, std::uint64_t budget) {
  config.validate();
  const int n = static_cast<int>(profile.size());
  if (n != config.n) throw std::invalid_argument("profile length does not match bidder count");

  std::vector<std::vector<Atom>> atoms;
  atoms.reserve(profile.size());
  std::uint64_t terms = 1;
  for (const MixedStrategy& s : profile) {
    atoms.push_back(compile(s));
    check_budget(terms, atoms.back().size(), budget);
    terms *= atoms.back().size();
  }

  const double v = static_cast<double>(config.value);
  const double c = static_cast<double>(config.bid_cost);

  Expectations out;
  out.bidder.assign(static_cast<std::size_t>(n), 0.0);

  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  std::vector<std::uint64_t> masks(static_cast<std::size_t>(n), 0);
  for (;;) {
    double prob = 1.0;
    int total_cards = 0;
    for (int i = 0; i < n; ++i) {
      const Atom& a = atoms[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
      prob *= a.prob;
      masks[static_cast<std::size_t>(i)] = a.mask;
      total_cards += a.card;
    }

    std::uint64_t once = 0, multi = 0;
    for (int i = 0; i < n; ++i) {
      multi |= once & masks[static_cast<std::size_t>(i)];
      once |= masks[static_cast<std::size_t>(i)];
    }
    const std::uint64_t unique = once & ~multi;

    int winner = -1;
    double winning_bid = 0.0;
    if (unique) {
      const int pos = std::countr_zero(unique);
      winning_bid = static_cast<double>(pos + 1);
      for (int i = 0; i < n; ++i) {
        if ((masks[static_cast<std::size_t>(i)] >> pos) & 1ull) {
          winner = i;
          break;
        }
      }
    }

    for (int i = 0; i < n; ++i) {
      const Atom& a = atoms[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
      double u = -c * a.card;
      if (i == winner) u += v - winning_bid;
      out.bidder[static_cast<std::size_t>(i)] += prob * u;
    }
    double us = c * total_cards;
    if (winner >= 0) us += winning_bid - v;
    out.seller += prob * us;

    // odometer: last index fastest
    int j = n - 1;
    for (; j >= 0; --j) {
      if (++idx[static_cast<std::size_t>(j)] < atoms[static_cast<std::size_t>(j)].size()) break;
      idx[static_cast<std::size_t>(j)] = 0;
    }
    if (j < 0) break;
  }
  return out;
}

// Enumerates candidate masks for a strategy space in a fixed order: by
// cardinality, then numerically (Gosper's hack within each cardinality).
template <typename Fn>
void for_each_candidate(const StrategySpace& space, Fn&& fn) {
  if (space.monotone_only) {
    fn(0ull);
    const int depth = std::min(space.max_bid, space.max_set_size);
    for (int k = 1; k <= depth; ++k) fn((1ull << k) - 1);
    return;
  }
  fn(0ull);
  const std::uint64_t limit = 1ull << space.max_bid;  // max_bid <= 63 by validate()
  const int max_k = std::min(space.max_bid, space.max_set_size);
  for (int k = 1; k <= max_k; ++k) {
    std::uint64_t m = (1ull << k) - 1;
    while (m < limit) {
      fn(m);
      // Gosper: next mask with the same popcount
      const std::uint64_t lo = m & (~m + 1);
      const std::uint64_t lz = m + lo;
      m = lz | (((m ^ lz) / lo) >> 2);
    }
  }
}

std::uint64_t candidate_count(const StrategySpace& space) {
  if (space.monotone_only)
    return 1 + static_cast<std::uint64_t>(std::min(space.max_bid, space.max_set_size));
  // sum of binomials C(max_bid, k) for k <= max_set_size, saturating
  std::uint64_t total = 0;
  long double binom = 1.0L;
  const int max_k = std::min(space.max_bid, space.max_set_size);
  for (int k = 0; k <= max_k; ++k) {
    if (binom > 1e18L) return std::numeric_limits<std::uint64_t>::max();
    total += static_cast<std::uint64_t>(binom);
    binom = binom * (space.max_bid - k) / (k + 1);
  }
  return total;
}

}  // namespace

void MixedStrategy::validate() const {
  if (support.empty()) throw std::invalid_argument("mixed strategy has empty support");
  double sum = 0.0;
  for (const auto& [set, prob] : support) {
    if (!(prob >= 0.0) || prob > 1.0 + 1e-12)
      throw std::invalid_argument("support probability out of [0, 1]");
    sum += prob;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("support probabilities sum to " + std::to_string(sum));
  std::vector<BidSet> sets;
  sets.reserve(support.size());
  for (const auto& [set, prob] : support) sets.push_back(set);
  std::sort(sets.begin(), sets.end());
  if (std::adjacent_find(sets.begin(), sets.end()) != sets.end())
    throw std::invalid_argument("support entries must be distinct");
}

bool MixedStrategy::is_monotone() const {
  for (const auto& [set, prob] : support)
    if (!set.is_prefix()) return false;
  return true;
}

MixedStrategy MixedStrategy::point_mass(BidSet s) {
  return MixedStrategy{{{std::move(s), 1.0}}};
}

void StrategySpace::validate() const {
  if (max_bid < 1) throw std::invalid_argument("strategy space needs max_bid >= 1");
  if (max_bid > kMaxOracleBid)
    throw std::domain_error("oracle handles spaces with max_bid up to 63");
  if (max_set_size < 0) throw std::invalid_argument("max_set_size must be >= 0");
}

BudgetExceededError::BudgetExceededError(std::uint64_t term_count)
    : std::runtime_error("oracle enumeration budget exceeded: " +
                         std::to_string(term_count) + " terms"),
      terms(term_count) {}

std::vector<double> expected_payoffs(const std::vector<MixedStrategy>& profile,
                                     const AuctionConfig& config,
                                     std::uint64_t term_budget) {
  return expectations(profile, config, term_budget).bidder;
}

double expected_seller_payoff(const std::vector<MixedStrategy>& profile,
                              const AuctionConfig& config, std::uint64_t term_budget) {
  return expectations(profile, config, term_budget).seller;
}

BestResponse best_response(int player, const std::vector<MixedStrategy>& others,
                           const StrategySpace& space, const AuctionConfig& config,
                           std::uint64_t term_budget) {
  config.validate();
  space.validate();
  if (player < 0 || player >= config.n)
    throw std::invalid_argument("player index out of range");
  if (static_cast<int>(others.size()) != config.n - 1)
    throw std::invalid_argument("expected n-1 opponent strategies");

  std::vector<std::vector<Atom>> atoms;
  atoms.reserve(others.size());
  std::uint64_t combo_count = 1;
  for (const MixedStrategy& s : others) {
    atoms.push_back(compile(s));
    check_budget(combo_count, atoms.back().size(), term_budget);
    combo_count *= atoms.back().size();
  }
  check_budget(candidate_count(space), combo_count, term_budget);

  const std::vector<Combo> combos = flatten(atoms);
  const double v = static_cast<double>(config.value);
  const double c = static_cast<double>(config.bid_cost);

  const auto eval = [&](std::uint64_t m) {
    double e = -c * static_cast<double>(std::popcount(m));
    for (const Combo& combo : combos) {
      const std::uint64_t once = combo.once | m;
      const std::uint64_t multi = combo.multi | (combo.once & m);
      const std::uint64_t unique = once & ~multi;
      if (!unique) continue;
      const int pos = std::countr_zero(unique);
      if ((m >> pos) & 1ull) e += combo.prob * (v - static_cast<double>(pos + 1));
    }
    return e;
  };

  double best = -std::numeric_limits<double>::infinity();
  for_each_candidate(space, [&](std::uint64_t m) { best = std::max(best, eval(m)); });

  BestResponse out;
  out.value = best;
  for_each_candidate(space, [&](std::uint64_t m) {
    if (eval(m) >= best - kTieTolerance) out.argmax.push_back(mask_to_set(m));
  });
  std::sort(out.argmax.begin(), out.argmax.end());
  return out;
}

NashReport epsilon_nash_check(const std::vector<MixedStrategy>& profile,
                              const StrategySpace& space, const AuctionConfig& config,
                              double eps, std::uint64_t term_budget) {
  const Expectations exp = expectations(profile, config, term_budget);

  NashReport report;
  report.expected = exp.bidder;
  report.seller_expected = exp.seller;
  report.worst_gain = -std::numeric_limits<double>::infinity();

  for (int i = 0; i < config.n; ++i) {
    std::vector<MixedStrategy> others;
    others.reserve(profile.size() - 1);
    for (int j = 0; j < config.n; ++j)
      if (j != i) others.push_back(profile[static_cast<std::size_t>(j)]);
    const BestResponse br = best_response(i, others, space, config, term_budget);
    const double gain = br.value - exp.bidder[static_cast<std::size_t>(i)];
    if (gain > report.worst_gain) {
      report.worst_gain = gain;
      report.deviating_player = i;
      report.deviation = br.argmax.empty() ? BidSet() : br.argmax.front();
    }
  }
  report.is_eq = report.worst_gain <= eps;
  return report;
}

std::pair<BidSet, BidSet> monotone_dominance_transform(const BidSet& s) {
  if (s.is_prefix())
    throw std::domain_error("set is a prefix set; nothing to transform");
  // smallest l >= 1 with l missing and l+1 present
  Bid l = 0;
  for (Bid b : s.values()) {
    if (b >= 2 && !s.contains(b - 1)) {
      l = b - 1;
      break;
    }
  }
  std::vector<Bid> shifted;
  shifted.reserve(s.size());
  for (Bid b : s.values()) shifted.push_back(b == l + 1 ? l : b);
  std::vector<Bid> truncated;
  for (Bid b : s.values())
    if (b < l) truncated.push_back(b);
  return {BidSet(std::move(shifted)), BidSet(std::move(truncated))};
}

}  // namespace luba
