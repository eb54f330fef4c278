#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace avsec {

/// One-pass mean/variance accumulator (Welford), mergeable with Chan's
/// update so sharded reductions reproduce the sequential result.
class Welford {
 public:
  void add(double x) {
    n_ += 1;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }

  void merge(const Welford& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) { *this = o; return; }
    const double na = static_cast<double>(n_), nb = static_cast<double>(o.n_);
    const double d = o.mean_ - mean_;
    const double nt = na + nb;
    mean_ += d * nb / nt;
    m2_ += o.m2_ + d * d * na * nb / nt;
    n_ += o.n_;
  }

  std::int64_t count() const { return n_; }
  double mean() const { return mean_; }
  double sample_variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double stderr_of_mean() const {
    return n_ > 1 ? std::sqrt(sample_variance() / static_cast<double>(n_)) : 0.0;
  }

 private:
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Monte-Carlo value with standard error. `exact` marks closed-form paths
/// (std_error == 0, samples == 0). Arithmetic combinators propagate variance
/// to first order and keep the exact flag only when every operand is exact.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  bool exact = false;
  bool delta_ok = true;  // false when a power transform amplified noise past validity

  static Estimate exact_value(double v) { return Estimate{v, 0.0, 0, true, true}; }

  static Estimate from_welford(const Welford& w) {
    return Estimate{w.mean(), w.stderr_of_mean(), w.count(), false, true};
  }

  Estimate scaled(double c) const {
    return Estimate{c * value, std::abs(c) * std_error, samples, exact, delta_ok};
  }

  /// value^p with first-order (delta method) error propagation.
  Estimate pow(double p) const {
    if (value <= 0.0 && std::floor(p) != p)
      throw std::domain_error("Estimate::pow: non-positive base with fractional exponent");
    const double v = std::pow(value, p);
    const double se = std::abs(p * std::pow(value, p - 1.0)) * std_error;
    bool ok = delta_ok;
    if (!exact && value != 0.0 && std::abs(p) * std_error / std::abs(value) > 0.2) ok = false;
    return Estimate{v, se, samples, exact, ok};
  }

  double rel_error() const { return value != 0.0 ? std_error / std::abs(value) : std_error; }
};

inline Estimate eadd(const Estimate& a, const Estimate& b) {
  return Estimate{a.value + b.value, std::hypot(a.std_error, b.std_error),
                  a.samples + b.samples, a.exact && b.exact, a.delta_ok && b.delta_ok};
}

inline Estimate esub(const Estimate& a, const Estimate& b) {
  return Estimate{a.value - b.value, std::hypot(a.std_error, b.std_error),
                  a.samples + b.samples, a.exact && b.exact, a.delta_ok && b.delta_ok};
}

inline Estimate emul(const Estimate& a, const Estimate& b) {
  const double v = a.value * b.value;
  const double se = std::hypot(a.std_error * b.value, b.std_error * a.value);
  return Estimate{v, se, a.samples + b.samples, a.exact && b.exact, a.delta_ok && b.delta_ok};
}

inline Estimate ediv(const Estimate& a, const Estimate& b) {
  if (b.value == 0.0) throw std::domain_error("Estimate: division by zero estimate");
  const double v = a.value / b.value;
  const double se = std::hypot(a.std_error / b.value, a.value * b.std_error / (b.value * b.value));
  return Estimate{v, std::abs(se), a.samples + b.samples, a.exact && b.exact,
                  a.delta_ok && b.delta_ok};
}

/// 3-sigma combined tolerance used by equality/inequality verdicts.
inline double combined_stderr(const Estimate& a, const Estimate& b) {
  return std::hypot(a.std_error, b.std_error);
}

}  // namespace avsec
