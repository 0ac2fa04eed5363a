#pragma once

#include <cstdint>
#include <string>

namespace luba {

// All monetary amounts are kept as integer cents.
using Money = std::int64_t;

/// Converts a euro amount to cents. Rejects sub-cent precision.
Money euros_to_cents(double euros);

/// Parses a decimal euro string ("12", "12.3", "0.50") with at most two
/// fractional digits.
Money parse_euros(const std::string& text);

inline double cents_to_euros(Money cents) { return static_cast<double>(cents) / 100.0; }

}  // namespace luba
