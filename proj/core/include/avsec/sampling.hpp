#pragma once

#include <cstdint>

#include "avsec/body.hpp"
#include "avsec/linalg.hpp"
#include "avsec/rng.hpp"

namespace avsec {

/// Thrown when rejection sampling exceeds its attempt budget; the body is too
/// eccentric or too high-dimensional for rejection from the circumscribed
/// ball. Precondition the body with linear_image or reduce the dimension.
class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform direction on S^{n-1}: normalized standard Gaussian vector.
Direction sphere_point(int n, RngStream& rng);

/// Haar-distributed m-dimensional subspace of R^n: Gaussian n x m matrix,
/// QR-orthonormalized with the R diagonal forced positive so the basis is a
/// deterministic function of the draw.
Subspace grassmann_subspace(int n, int m, RngStream& rng);

/// Orthonormal basis of the orthogonal complement (dimension n - m).
Subspace complement(const Subspace& e);

/// Haar-distributed rotation (special orthogonal matrix).
Matrix random_rotation(int n, RngStream& rng);

struct BodySample {
  Vector point;
  std::uint64_t attempts;  // rejection draws consumed, including the accepted one
};

/// Uniform point in the body by rejection from the circumscribed ball.
/// Throws budget_error after `max_attempts` consecutive rejections.
BodySample body_point(const Body& body, RngStream& rng,
                      std::uint64_t max_attempts = 10'000'000);

}  // namespace avsec
