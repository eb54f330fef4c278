#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "avsec/constants.hpp"

using namespace avsec;

namespace {
// independent log-domain evaluation of the unit-ball volume
double omega_oracle(int m) {
  return std::exp(0.5 * m * std::log(std::numbers::pi) - std::lgamma(0.5 * m + 1.0));
}
}  // namespace

TEST_CASE("unit ball volumes") {
  CHECK(constants::omega(0) == doctest::Approx(1.0));
  CHECK(constants::omega(1) == doctest::Approx(2.0));
  CHECK(constants::omega(2) == doctest::Approx(std::numbers::pi));
  CHECK(constants::omega(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0));
  for (int m = 0; m <= 60; ++m)
    CHECK(constants::omega(m) == doctest::Approx(omega_oracle(m)).epsilon(1e-12));
}

TEST_CASE("b(3,1) equals the printed omega ratio") {
  const double expected = std::numbers::pi / (2.0 * std::cbrt(4.0 * std::numbers::pi / 3.0));
  CHECK(constants::b(3, 1) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(constants::b(3, 1) == doctest::Approx(0.9744442724).epsilon(1e-9));
}

TEST_CASE("b(n,k) stays near one across the table") {
  for (int n = 3; n <= 50; ++n)
    for (int k = 1; k <= n - 2; ++k) {
      const double v = constants::b(n, k);
      CHECK(v > 0.5);
      CHECK(v < 2.0);
    }
}

TEST_CASE("c(n,k) stays near one") {
  for (int n = 3; n <= 50; ++n)
    for (int k = 1; k <= n - 1; ++k) {
      const double v = constants::c(n, k);
      CHECK(v > 0.5);
      CHECK(v < 3.0);
    }
}

TEST_CASE("phi reduces to b at r = 1") {
  for (int n = 4; n <= 12; ++n)
    for (int k = 1; k <= n - 3; ++k)
      CHECK(constants::phi(n, k, 1) == doctest::Approx(constants::b(n, k)).epsilon(1e-13));
}

TEST_CASE("phi matches its omega formula") {
  for (int n = 4; n <= 10; ++n)
    for (int k = 1; k + 2 <= n; ++k)
      for (int r = 1; k + r <= n; ++r) {
        const double expected = std::pow(
            omega_oracle(n - r) / (omega_oracle(n - k - r) *
                                   std::pow(omega_oracle(n), double(k) / n)),
            1.0 / k);
        CHECK(constants::phi(n, k, r) == doctest::Approx(expected).epsilon(1e-12));
      }
}

TEST_CASE("varrho matches its omega formula") {
  for (int n = 3; n <= 12; ++n)
    for (int k = 1; k <= n - 2; ++k) {
      const double expected =
          omega_oracle(n - k - 1) *
          std::pow(omega_oracle(n - 1), -double(n - k - 1) / (n - 1));
      CHECK(constants::varrho(n, k) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("h(1) = 1 and h grows") {
  CHECK(constants::h(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(constants::h(2.0) > constants::h(1.0));
  CHECK(constants::h(std::numbers::e) ==
        doctest::Approx(std::sqrt(std::numbers::e) * std::pow(2.0, 1.5)).epsilon(1e-13));
}

TEST_CASE("invalid indices throw") {
  CHECK_THROWS_AS(constants::omega(-1), std::invalid_argument);
  CHECK_THROWS_AS(constants::b(3, 3), std::invalid_argument);
  CHECK_THROWS_AS(constants::phi(4, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(constants::h(0.5), std::invalid_argument);
}
