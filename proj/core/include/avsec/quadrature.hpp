#pragma once

#include <optional>

#include "avsec/body.hpp"
#include "avsec/estimate.hpp"
#include "avsec/rng.hpp"
#include "avsec/sampling.hpp"

namespace avsec {

/// Even, continuous, nonnegative radial weight used by the weighted
/// integrals. All variants depend on the point only through its norm.
struct Density {
  enum class Kind { One, NormPower, Gaussian };
  Kind kind = Kind::One;
  double param = 0.0;  // exponent for NormPower, width s for Gaussian

  static Density one() { return {Kind::One, 0.0}; }
  static Density norm_power(double exponent) { return {Kind::NormPower, exponent}; }
  static Density gaussian(double s) { return {Kind::Gaussian, s}; }

  double operator()(double norm) const {
    switch (kind) {
      case Kind::One: return 1.0;
      case Kind::NormPower: return std::pow(norm, param);
      case Kind::Gaussian: return std::exp(-norm * norm / (2.0 * param * param));
    }
    return 1.0;
  }

  std::string name() const {
    switch (kind) {
      case Kind::One: return "one";
      case Kind::NormPower: return "norm_power";
      case Kind::Gaussian: return "gaussian";
    }
    return "one";
  }
};

// Spherical measure conventions, used consistently everywhere:
//   sigma   rotationally invariant probability measure on S^{d-1}
//   dtheta  unnormalized measure on S^{d-1}, total mass d * omega_d
//   nu      Haar probability measure on the Grassmannian
// Estimators documented "d sigma" return plain means; "d theta" results are
// rescaled by the total sphere mass.

/// int rho_K^p d sigma over S^{n-1}, sample mean over N uniform directions.
Estimate radial_moment(const Body& body, double p, long num_samples, RngStream rng);

/// |K|. Closed form (exact flag) when the variant has one, else
/// omega_n * radial_moment(n).
Estimate volume(const Body& body, long num_samples, RngStream rng);

/// Monte-Carlo volume, bypassing the closed-form fast path (oracle cross-tests).
Estimate volume_mc(const Body& body, long num_samples, RngStream rng);

/// |K cap E| via the section body; exact when the section specializes.
Estimate section_volume(const Body& body, const Subspace& e, long num_samples, RngStream rng);
Estimate section_volume_mc(const Body& body, const Subspace& e, long num_samples, RngStream rng);

/// int rho_K^{d-1}(theta) f(rho_K(theta) theta) dtheta, where the sphere is
/// S^{n-1} (d = n, no subspace) or S^{n-1} cap E (d = n - k, dim E = n - k).
/// Unnormalized dtheta convention: result includes the total mass d omega_d.
Estimate weighted_radial_integral(const Body& body, const Density& f, int codim,
                                  long num_samples, RngStream rng,
                                  const std::optional<Subspace>& e = std::nullopt);

/// int h_K d sigma. Requires a support oracle.
Estimate mean_width(const Body& body, long num_samples, RngStream rng);

/// M(K) = int rho_K^{-1} d sigma.
Estimate m_value(const Body& body, long num_samples, RngStream rng);

/// Volume radius (|K| / omega_n)^{1/n}.
Estimate vrad(const Body& body, long num_samples, RngStream rng);

}  // namespace avsec
