#pragma once

#include <vector>

#include "avsec/estimate.hpp"
#include "avsec/quadrature.hpp"

namespace avsec {

/// as(K): average volume of central hyperplane sections,
/// omega_{n-1} * int rho_K^{n-1} d sigma.
Estimate avg_section(const Body& body, long num_samples, RngStream rng);

/// Independent two-stage estimator for as(K): sample a normal direction,
/// then the section volume. Oracle counterpart of avg_section.
Estimate avg_section_two_stage(const Body& body, int num_directions, long num_samples,
                               RngStream rng);

/// as_r(K): average volume of r-codimensional central sections,
/// omega_{n-r} * int rho_K^{n-r} d sigma.
Estimate avg_section_r(const Body& body, int r, long num_samples, RngStream rng);

/// as(K cap E) for dim E >= 2, computed on the section body.
Estimate avg_section_in_subspace(const Body& body, const Subspace& e, long num_samples,
                                 RngStream rng);

/// j-th dual mixed volume, omega_n * int rho_K^{n-j} rho_D^j d sigma.
Estimate dual_mixed_volume_j(const Body& k, const Body& d, int j, long num_samples,
                             RngStream rng);

/// Scan of as(K cap E) over Haar-random E in Gr_{n-k}. The max is refined by
/// a greedy walk over Cayley rotations of the best basis; any sampled value
/// certifies a lower bound on the true maximum, so "<= C * max" checks done
/// with it are conservative.
struct GrassmannScan {
  int codim = 0;
  std::vector<Subspace> subspaces;
  std::vector<Estimate> values;
  int argmax_index = 0;
  Matrix argmax_basis;  // refined basis, orthonormal columns
  Estimate max_value;   // refined; never below any listed value
  Estimate mean_value;
};

GrassmannScan grassmann_max_avg_section(const Body& body, int k, int num_subspaces,
                                        long num_samples, int refine_iters, RngStream rng);

/// Haar mean of as(K cap E) over Gr_{n-k} (two-stage estimator).
Estimate mean_avg_section(const Body& body, int k, int num_subspaces, long num_samples,
                          RngStream rng);

/// Same quantity through the single-sphere identity
/// omega_{n-k-1} * int rho_K^{n-k-1} d sigma; kept as an independent oracle
/// for the Grassmannian estimator.
Estimate mean_avg_section_sphere(const Body& body, int k, long num_samples, RngStream rng);

/// R_k(K) = |K|^{-(n-k)} * int |K cap E|^n d nu_{n-k}; GL(n)-invariant.
Estimate dual_quermass_R(const Body& body, int k, int num_subspaces, long num_samples,
                         RngStream rng);

/// Phi_k(K) = (omega_n / omega_{n-k}) * (int |K cap E|^n d nu)^{1/n}.
/// Same sampling as dual_quermass_R when given the same stream.
Estimate dual_affine_quermass_Phi(const Body& body, int k, int num_subspaces,
                                  long num_samples, RngStream rng);

/// Per-body witness gamma = [as(K) / (|K|^{k/n} max_E as(K cap E))]^{1/k}.
/// The sampled max underestimates the true one, so the witness overestimates.
Estimate gamma_witness(const Body& body, int k, int num_subspaces, long num_samples,
                       int refine_iters, RngStream rng);

struct SubspaceMax {
  Estimate value;
  Matrix basis;
};

/// Sampled + locally refined maximum of an arbitrary subspace functional
/// over Gr_m(R^n). Any sampled value certifies a lower bound on the true
/// supremum. `eval` must be a pure function of (subspace, stream).
SubspaceMax grassmann_max(int n, int m, int num_subspaces, int refine_iters, RngStream rng,
                          const std::function<Estimate(const Subspace&, RngStream)>& eval);

}  // namespace avsec
