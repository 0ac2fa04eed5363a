#include "doctest.h"

#include "luba/money.hpp"
#include "luba/rng.hpp"

#include <cmath>
#include <stdexcept>

using namespace luba;

TEST_CASE("euro parsing and conversion") {
  CHECK(parse_euros("500") == 50000);
  CHECK(parse_euros("0.5") == 50);
  CHECK(parse_euros("0.50") == 50);
  CHECK(parse_euros("10.25") == 1025);
  CHECK(parse_euros("10.2") == 1020);
  CHECK(parse_euros("-3") == -300);
  CHECK_THROWS_AS(parse_euros("0.125"), std::invalid_argument);
  CHECK_THROWS_AS(parse_euros("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_euros(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_euros("abc"), std::invalid_argument);

  CHECK(euros_to_cents(0.5) == 50);
  CHECK(euros_to_cents(500.0) == 50000);
  CHECK(euros_to_cents(1049.0) == 104900);
  CHECK_THROWS_AS(euros_to_cents(0.005), std::invalid_argument);
}

TEST_CASE("rng streams are deterministic and distinct") {
  Rng a(42, 0), b(42, 0), c(42, 1);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 64; ++i) {
    const auto x = a.next_u64();
    all_equal = all_equal && (x == b.next_u64());
    any_diff = any_diff || (x != c.next_u64());
  }
  CHECK(all_equal);
  CHECK(any_diff);

  Rng u(7, 3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform01();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  for (int i = 0; i < 1000; ++i) {
    const auto x = u.uniform_int(5, 9);
    CHECK(x >= 5);
    CHECK(x <= 9);
  }
}

TEST_CASE("poisson sampler matches its moments") {
  const auto check_lambda = [](double lambda, std::uint64_t stream) {
    Rng rng(2024, stream);
    const int n = 20000;
    double sum = 0, sumsq = 0;
    for (int i = 0; i < n; ++i) {
      const double k = static_cast<double>(sample_poisson(rng, lambda));
      sum += k;
      sumsq += k * k;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    const double se_mean = std::sqrt(lambda / n);
    CHECK(std::abs(mean - lambda) < 4 * se_mean);
    CHECK(std::abs(var - lambda) < 0.1 * lambda + 4 * lambda * std::sqrt(2.0 / n));
  };
  check_lambda(0.3, 1);   // inversion
  check_lambda(3.0, 2);   // inversion
  check_lambda(9.9, 3);   // inversion boundary
  check_lambda(10.1, 4);  // PTRS boundary
  check_lambda(50.0, 5);  // PTRS
  check_lambda(1645.0, 6);

  Rng rng(1, 1);
  CHECK(sample_poisson(rng, 0.0) == 0);
  CHECK_THROWS_AS(sample_poisson(rng, -1.0), std::invalid_argument);
}
