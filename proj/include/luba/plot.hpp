#pragma once

#include "luba/auction_core.hpp"
#include "luba/backtest.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace luba {

/// Minimal deterministic SVG rendering for the CLI. CSV stays the data
/// contract; these are convenience views with no external dependencies.

/// Bar chart of per-integer bid counts.
std::string svg_histogram(const std::vector<std::pair<Bid, std::uint32_t>>& bars,
                          const std::string& title);

/// Step plot of an empirical CDF, points as (ratio percent, cum fraction).
std::string svg_cdf(const std::vector<std::pair<double, double>>& points,
                    const std::string& title);

/// Heatmap of a performance grid; undefined cells render gray.
std::string svg_heatmap(const std::vector<GridCell>& grid, const std::string& title);

}  // namespace luba
