#include "avsec/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace avsec::constants {

double omega(int m) {
  if (m < 0) throw std::invalid_argument("omega: negative dimension");
  return std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
}

double b(int n, int k) {
  if (n < 2 || k < 1 || k > n - 1) throw std::invalid_argument("b(n,k): need 1 <= k <= n-1");
  const double bk = omega(n - 1) / (omega(n - k - 1) * std::pow(omega(n), double(k) / n));
  return std::pow(bk, 1.0 / k);
}

double c(int n, int k) {
  if (n < 2 || k < 1 || k > n - 1) throw std::invalid_argument("c(n,k): need 1 <= k <= n-1");
  const double ck = n * std::pow(omega(n), double(n - k) / n) / ((n - k) * omega(n - k));
  return std::pow(ck, 1.0 / k);
}

double phi(int n, int k, int r) {
  if (n < 2 || k < 1 || r < 1 || k + r > n)
    throw std::invalid_argument("phi(n,k,r): need k,r >= 1 and k+r <= n");
  const double pk = omega(n - r) / (omega(n - k - r) * std::pow(omega(n), double(k) / n));
  return std::pow(pk, 1.0 / k);
}

double varrho(int n, int k) {
  if (n < 2 || k < 1 || k > n - 1)
    throw std::invalid_argument("varrho(n,k): need 1 <= k <= n-1");
  return omega(n - k - 1) * std::pow(omega(n - 1), -double(n - k - 1) / (n - 1));
}

double h(double t) {
  if (t < 1.0) throw std::invalid_argument("h(t): defined for t >= 1");
  return std::sqrt(t) * std::pow(std::log(std::numbers::e * t), 1.5);
}

}  // namespace avsec::constants
