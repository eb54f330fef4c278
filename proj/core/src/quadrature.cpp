#include "avsec/quadrature.hpp"

#include "avsec/constants.hpp"

namespace avsec {

namespace {

template <typename F>
Estimate sphere_mean(int n, long num_samples, RngStream& rng, F&& integrand) {
  if (num_samples < 2) throw std::invalid_argument("estimator: need at least 2 samples");
  Welford acc;
  for (long i = 0; i < num_samples; ++i) {
    const Direction theta = sphere_point(n, rng);
    acc.add(integrand(theta));
  }
  return Estimate::from_welford(acc);
}

}  // namespace

Estimate radial_moment(const Body& body, double p, long num_samples, RngStream rng) {
  if (p < 0.0) throw std::invalid_argument("radial_moment: exponent must be >= 0");
  return sphere_mean(body.dim(), num_samples, rng,
                     [&](const Direction& t) { return std::pow(body.radial(t), p); });
}

Estimate volume_mc(const Body& body, long num_samples, RngStream rng) {
  const int n = body.dim();
  return radial_moment(body, double(n), num_samples, rng).scaled(constants::omega(n));
}

Estimate volume(const Body& body, long num_samples, RngStream rng) {
  if (auto v = body.exact_volume()) return Estimate::exact_value(*v);
  return volume_mc(body, num_samples, rng);
}

Estimate section_volume(const Body& body, const Subspace& e, long num_samples, RngStream rng) {
  return volume(section_body(body, e), num_samples, rng);
}

Estimate section_volume_mc(const Body& body, const Subspace& e, long num_samples, RngStream rng) {
  return volume_mc(section_body(body, e), num_samples, rng);
}

Estimate weighted_radial_integral(const Body& body, const Density& f, int codim,
                                  long num_samples, RngStream rng,
                                  const std::optional<Subspace>& e) {
  const int n = body.dim();
  if (codim < 0 || codim > n - 1)
    throw std::invalid_argument("weighted_radial_integral: need 0 <= k <= n-1");
  if (!e) {
    const double mass = n * constants::omega(n);
    return sphere_mean(n, num_samples, rng, [&](const Direction& t) {
             const double rho = body.radial(t);
             return std::pow(rho, n - 1) * f(rho);
           })
        .scaled(mass);
  }
  if (e->ambient_dim() != n || e->dim() != n - codim)
    throw std::invalid_argument("weighted_radial_integral: subspace must have dim n-k");
  const int d = n - codim;
  const double mass = d * constants::omega(d);
  const Matrix& basis = e->basis();
  return sphere_mean(d, num_samples, rng, [&](const Direction& phi) {
           const Direction theta = Direction::normalized(basis * phi.vec());
           const double rho = body.radial(theta);
           return std::pow(rho, n - codim - 1) * f(rho);
         })
      .scaled(mass);
}

Estimate mean_width(const Body& body, long num_samples, RngStream rng) {
  if (!body.has_support())
    throw std::domain_error("mean_width: body has no support oracle");
  return sphere_mean(body.dim(), num_samples, rng,
                     [&](const Direction& t) { return body.support(t); });
}

Estimate m_value(const Body& body, long num_samples, RngStream rng) {
  return sphere_mean(body.dim(), num_samples, rng,
                     [&](const Direction& t) { return 1.0 / body.radial(t); });
}

Estimate vrad(const Body& body, long num_samples, RngStream rng) {
  const int n = body.dim();
  return volume(body, num_samples, rng).scaled(1.0 / constants::omega(n)).pow(1.0 / n);
}

}  // namespace avsec
