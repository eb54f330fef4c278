#pragma once

#include "avsec/estimate.hpp"
#include "avsec/quadrature.hpp"

namespace avsec {

enum class MomentsMethod {
  Auto,        // closed form when the variant has one, Monte Carlo otherwise
  MonteCarlo,  // force the sampling path (oracle cross-tests)
};

/// Barycenter and covariance of the uniform distribution on the body,
/// together with the volume.
struct BodyMoments {
  Vector barycenter;
  Matrix covariance;  // about the barycenter, per unit volume
  Estimate volume;
  long samples = 0;  // 0 on the closed-form path
  bool exact = false;
};

BodyMoments body_moments(const Body& body, long num_points, RngStream rng,
                         MomentsMethod method = MomentsMethod::Auto);

/// Isotropic constant L_K = det(cov)^{1/(2n)} / |K|^{1/n}.
///
/// The closed form is forced by the defining property of the isotropic
/// position: it is invariant under GL(n) and scaling, and reduces to the
/// direction-wise second moment when the body has volume one and covariance
/// proportional to the identity. Those three facts are asserted in tests.
Estimate isotropic_constant(const Body& body, long num_points, RngStream rng,
                            MomentsMethod method = MomentsMethod::Auto);

struct IsotropicPosition {
  Matrix transform;    // T = s * cov^{-1/2}; image = T (K - recentering)
  Vector recentering;  // barycenter subtracted before the linear map
  Body image;          // volume-1 body with covariance ~ L^2 * Id
  Estimate constant;   // L_K
  double certificate;  // ||cov - (tr/n) Id||_op / (tr/n) of the image
};

/// Whitening map into the isotropic position. The certificate is evaluated
/// on the image with the same method (exact when available).
IsotropicPosition isotropic_position(const Body& body, long num_points, RngStream rng,
                                     MomentsMethod method = MomentsMethod::Auto);

/// Isotropy defect of a covariance matrix: ||cov - (tr/n) Id||_op / (tr/n).
double isotropy_defect(const Matrix& covariance);

}  // namespace avsec
