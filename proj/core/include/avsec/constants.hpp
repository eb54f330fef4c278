#pragma once

namespace avsec::constants {

/// Volume of the m-dimensional Euclidean unit ball, pi^{m/2} / Gamma(m/2 + 1).
/// omega(0) == 1.
double omega(int m);

/// Sharp constant of the hyperplane-section inequality family,
/// b(n,k) = [omega_{n-1} / (omega_{n-k-1} * omega_n^{k/n})]^{1/k}.
double b(int n, int k);

/// c(n,k) = [n * omega_n^{(n-k)/n} / ((n-k) * omega_{n-k})]^{1/k}.
double c(int n, int k);

/// phi(n,k,r) = [omega_{n-r} / (omega_{n-k-r} * omega_n^{k/n})]^{1/k}.
double phi(int n, int k, int r);

/// varrho(n,k) = omega_{n-k-1} * omega_{n-1}^{-(n-k-1)/(n-1)}.
double varrho(int n, int k);

/// h(t) = sqrt(t) * (log(e t))^{3/2} for t >= 1.
double h(double t);

}  // namespace avsec::constants
