#pragma once

#include <json.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "avsec/linalg.hpp"
#include "avsec/rng.hpp"

namespace avsec {

enum class BodyType {
  Ball,
  Ellipsoid,
  Cube,
  CrossPolytope,
  RegularSimplex,
  LpBall,
  HPolytope,
  LinearImage,
  Section,
  RadialSum,
};

std::string to_string(BodyType t);

/// Halfspace constraint <normal, x> <= offset.
struct Facet {
  Vector normal;
  double offset;
};

namespace detail {
class BodyImpl;
}

/// Immutable star-body descriptor with exact geometric oracles.
///
/// Every body is star-shaped about the origin with the origin interior, so
/// the radial function is finite and positive on the whole sphere. Derived
/// bodies (linear images, sections, radial sums) compose the component
/// oracles instead of discretizing, so no approximation error accumulates;
/// the only numerically flagged quantities are extremal radii of bodies
/// without a closed form. Oracles are pure and safe to call concurrently.
class Body {
 public:
  static Body ball(int dim, double radius);
  /// {x : x^T M x <= 1}; M symmetric positive-definite.
  static Body ellipsoid(Matrix M);
  static Body cube(int dim, double half_side);
  static Body cross_polytope(int dim, double scale);
  /// Centered regular simplex with unit circumradius (fixed embedding).
  static Body regular_simplex(int dim);
  /// {x : ||x||_p <= scale}, p in [1, inf].
  static Body lp_ball(int dim, double p, double scale);
  /// {x : A x <= b}, all b > 0 (origin interior). Must be bounded.
  static Body h_polytope(Matrix A, Vector b);

  int dim() const;
  BodyType type() const;
  std::string type_name() const;

  /// Closed-body membership; exact for every variant.
  bool contains(const Vector& x) const;

  /// rho_K(theta) = max{ lambda > 0 : lambda theta in K }.
  double radial(const Direction& theta) const;

  /// h_K(theta) = max{ <x, theta> : x in K }. Only for variants with a
  /// support oracle (see has_support); H-polytopes are excluded.
  double support(const Direction& theta) const;
  bool has_support() const;

  /// Smallest R with K inside R * B_2^n. Sampled lower bound when no closed
  /// form exists (radii_numeric() reports that).
  double circumradius() const;
  /// Largest r with r * B_2^n inside K.
  double inradius() const;
  bool radii_numeric() const;
  /// Upper bound on the circumradius suitable for rejection sampling
  /// (exact value when available, inflated numeric estimate otherwise).
  double circumradius_upper() const;

  bool is_convex() const;
  bool is_origin_symmetric() const;
  /// True when the barycenter is known to be at the origin.
  bool is_centered() const;
  /// True when the body is {x : x^T A x <= 1} for some SPD A (balls,
  /// ellipsoids and their linear images).
  bool is_ellipsoidal() const;

  std::optional<double> exact_volume() const;
  std::optional<Matrix> quadratic_form() const;

  struct ExactMoments {
    Vector barycenter;
    Matrix covariance;  // second moments about the barycenter, per unit volume
    double volume;
  };
  std::optional<ExactMoments> exact_moments() const;

  std::optional<std::vector<Facet>> facets() const;
  std::optional<std::vector<Vector>> vertices() const;

  /// Body + t. Exact for facet-represented bodies; identity when t == 0.
  Body translated(const Vector& t) const;

  nlohmann::json to_json() const;
  static Body from_json(const nlohmann::json& j);

  friend Body linear_image(const Matrix& T, const Body& body);
  friend Body section_body(const Body& body, const Subspace& E);
  friend Body radial_sum(const Body& K, const Body& D);

 private:
  explicit Body(std::shared_ptr<const detail::BodyImpl> impl);
  std::shared_ptr<const detail::BodyImpl> impl_;
};

/// T K for invertible T. Oracles compose exactly with the inner body.
Body linear_image(const Matrix& T, const Body& body);

/// K cap E realized as a star body of dimension dim(E), in the coordinates
/// of E's basis. Specializes to an exact lower-dimensional variant whenever
/// the parent admits one (ellipsoids, coordinate sections, facet bodies).
Body section_body(const Body& body, const Subspace& E);

/// Star body with rho = rho_K + rho_D.
Body radial_sum(const Body& K, const Body& D);

/// Sampled radial metric sup |rho_K - rho_D| over N random directions plus
/// greedy refinement; a lower bound on the true supremum.
double radial_distance(const Body& K, const Body& D, long num_samples, RngStream rng);

/// Bisection fallback for the radial function of an oracle-only body:
/// doubling bracket search on `contains`, then bisection to rel_tol.
double radial_by_bisection(const std::function<bool(const Vector&)>& contains,
                           const Direction& theta, double initial_upper,
                           double rel_tol = 1e-12, int max_iter = 200);

}  // namespace avsec
