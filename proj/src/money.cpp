#include "luba/money.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace luba {

Money euros_to_cents(double euros) {
  if (!std::isfinite(euros)) throw std::invalid_argument("money amount must be finite");
  const double scaled = euros * 100.0;
  if (std::abs(scaled) > 9.0e15) throw std::invalid_argument("money amount out of range");
  const Money cents = std::llround(scaled);
  if (std::abs(scaled - static_cast<double>(cents)) > 1e-6)
    throw std::invalid_argument("money amount has sub-cent precision: " + std::to_string(euros));
  return cents;
}

Money parse_euros(const std::string& text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos >= text.size()) throw std::invalid_argument("empty money amount");

  Money whole = 0;
  bool any_digit = false;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    whole = whole * 10 + (text[pos] - '0');
    if (whole > 90'000'000'000'000) throw std::invalid_argument("money amount out of range");
    any_digit = true;
    ++pos;
  }
  Money frac = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    int digits = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      if (++digits > 2)
        throw std::invalid_argument("money amount has sub-cent precision: " + text);
      frac = frac * 10 + (text[pos] - '0');
      any_digit = true;
      ++pos;
    }
    if (digits == 1) frac *= 10;
  }
  if (!any_digit || pos != text.size())
    throw std::invalid_argument("malformed money amount: " + text);

  const Money cents = whole * 100 + frac;
  return negative ? -cents : cents;
}

}  // namespace luba
