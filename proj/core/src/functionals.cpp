#include "avsec/functionals.hpp"

#include <cmath>

#include "avsec/constants.hpp"

namespace avsec {

namespace {

void require_scan_codim(const Body& body, int k) {
  if (k < 1 || k > body.dim() - 2)
    throw std::invalid_argument("codimension must satisfy 1 <= k <= n-2 (sections need dim >= 2)");
}

Estimate section_avg(const Body& body, const Matrix& basis, long num_samples, RngStream rng) {
  return avg_section(section_body(body, Subspace(basis)), num_samples, std::move(rng));
}

// orthonormalize with positive R diagonal, same convention as grassmann_subspace
Matrix reorthonormalize(const Matrix& b) {
  const int n = static_cast<int>(b.rows());
  const int m = static_cast<int>(b.cols());
  Eigen::HouseholderQR<Matrix> qr(b);
  Matrix q = qr.householderQ() * Matrix::Identity(n, m);
  const Matrix r = qr.matrixQR().topRows(m);
  for (int j = 0; j < m; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

// Cayley transform of a random skew matrix: orthogonal, close to identity
// for small step
Matrix cayley_rotation(int n, double step, RngStream& rng) {
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian();
  const Matrix skew = 0.5 * step * (g - g.transpose());
  const Matrix eye = Matrix::Identity(n, n);
  return (eye - skew) * (eye + skew).inverse();
}

// Greedy ascent over Cayley rotations of the basis, step halving on
// non-improvement, common evaluation stream so comparisons share noise.
SubspaceMax refine_subspace_max(int n, Matrix basis, Estimate start, int refine_iters,
                                RngStream rng,
                                const std::function<Estimate(const Subspace&, RngStream)>& eval) {
  const RngStream eval_rng = rng.substream(0);
  Estimate best = eval(Subspace(basis), eval_rng);
  Matrix best_basis = basis;
  double step = 0.3;
  for (int it = 0; it < refine_iters && step > 1e-8; ++it) {
    RngStream pert = rng.substream(it + 1);
    const Matrix rot = cayley_rotation(n, step, pert);
    const Matrix cand_basis = reorthonormalize(rot * best_basis);
    const Estimate cand = eval(Subspace(cand_basis), eval_rng);
    if (cand.value > best.value) {
      best = cand;
      best_basis = cand_basis;
    } else {
      step *= 0.5;
    }
  }
  // the common-stream re-evaluation may land below the original draw; keep
  // whichever certifies the larger lower bound
  if (best.value >= start.value) return SubspaceMax{best, std::move(best_basis)};
  return SubspaceMax{start, std::move(basis)};
}

struct SectionPowers {
  Estimate mean_power;  // int |K cap E|^n d nu estimate
  Estimate vol;         // |K|
};

SectionPowers grassmann_section_powers(const Body& body, int k, int num_subspaces,
                                       long num_samples, RngStream rng) {
  const int n = body.dim();
  if (k < 1 || k > n - 1) throw std::invalid_argument("need 1 <= k <= n-1");
  if (num_subspaces < 2) throw std::invalid_argument("need at least 2 subspaces");
  Welford acc;
  bool all_exact = true;
  bool delta_ok = true;
  for (int j = 0; j < num_subspaces; ++j) {
    RngStream sub = rng.substream(j);
    const Subspace e = grassmann_subspace(n, n - k, sub);
    const Estimate v = section_volume(body, e, num_samples, sub);
    const Estimate p = v.pow(double(n));
    acc.add(p.value);
    all_exact = all_exact && p.exact;
    delta_ok = delta_ok && p.delta_ok;
  }
  Estimate mean = Estimate::from_welford(acc);
  if (all_exact && acc.sample_variance() == 0.0) mean = Estimate::exact_value(mean.value);
  mean.delta_ok = delta_ok;
  const Estimate vol = volume(body, std::max<long>(num_samples, 2), rng.substream(num_subspaces));
  return SectionPowers{mean, vol};
}

}  // namespace

Estimate avg_section(const Body& body, long num_samples, RngStream rng) {
  const int n = body.dim();
  if (n < 2) throw std::invalid_argument("avg_section: dimension must be >= 2");
  return radial_moment(body, double(n - 1), num_samples, std::move(rng))
      .scaled(constants::omega(n - 1));
}

Estimate avg_section_two_stage(const Body& body, int num_directions, long num_samples,
                               RngStream rng) {
  const int n = body.dim();
  if (num_directions < 2) throw std::invalid_argument("avg_section_two_stage: need >= 2 directions");
  Welford acc;
  for (int j = 0; j < num_directions; ++j) {
    RngStream sub = rng.substream(j);
    const Direction xi = sphere_point(n, sub);
    // basis of xi-perp via the complement of span{xi}
    Matrix col(n, 1);
    col.col(0) = xi.vec();
    const Subspace perp = complement(Subspace(col));
    acc.add(section_volume(body, perp, num_samples, sub).value);
  }
  return Estimate::from_welford(acc);
}

Estimate avg_section_r(const Body& body, int r, long num_samples, RngStream rng) {
  const int n = body.dim();
  if (r < 1 || r > n - 1) throw std::invalid_argument("avg_section_r: need 1 <= r <= n-1");
  return radial_moment(body, double(n - r), num_samples, std::move(rng))
      .scaled(constants::omega(n - r));
}

Estimate avg_section_in_subspace(const Body& body, const Subspace& e, long num_samples,
                                 RngStream rng) {
  if (e.dim() < 2)
    throw std::invalid_argument("avg_section_in_subspace: section must have dimension >= 2");
  return avg_section(section_body(body, e), num_samples, std::move(rng));
}

Estimate dual_mixed_volume_j(const Body& k, const Body& d, int j, long num_samples,
                             RngStream rng) {
  const int n = k.dim();
  if (d.dim() != n) throw std::invalid_argument("dual_mixed_volume_j: dimension mismatch");
  if (j < 0 || j > n) throw std::invalid_argument("dual_mixed_volume_j: need 0 <= j <= n");
  if (num_samples < 2) throw std::invalid_argument("dual_mixed_volume_j: need >= 2 samples");
  Welford acc;
  for (long i = 0; i < num_samples; ++i) {
    const Direction theta = sphere_point(n, rng);
    acc.add(std::pow(k.radial(theta), n - j) * std::pow(d.radial(theta), j));
  }
  return Estimate::from_welford(acc).scaled(constants::omega(n));
}

GrassmannScan grassmann_max_avg_section(const Body& body, int k, int num_subspaces,
                                        long num_samples, int refine_iters, RngStream rng) {
  require_scan_codim(body, k);
  if (num_subspaces < 1) throw std::invalid_argument("need at least 1 subspace");
  const int n = body.dim();
  const int m = n - k;

  GrassmannScan scan;
  scan.codim = k;
  scan.subspaces.reserve(num_subspaces);
  scan.values.reserve(num_subspaces);
  Welford mean_acc;
  bool all_exact = true;
  for (int j = 0; j < num_subspaces; ++j) {
    RngStream sub = rng.substream(j);
    Subspace e = grassmann_subspace(n, m, sub);
    Estimate v = avg_section_in_subspace(body, e, num_samples, sub);
    mean_acc.add(v.value);
    all_exact = all_exact && v.exact;
    if (scan.values.empty() || v.value > scan.max_value.value) {
      scan.argmax_index = j;
      scan.max_value = v;
    }
    scan.subspaces.push_back(std::move(e));
    scan.values.push_back(v);
  }
  scan.mean_value = Estimate::from_welford(mean_acc);
  if (all_exact && mean_acc.sample_variance() == 0.0)
    scan.mean_value = Estimate::exact_value(scan.mean_value.value);

  SubspaceMax refined = refine_subspace_max(
      n, scan.subspaces[scan.argmax_index].basis(), scan.max_value, refine_iters,
      rng.substream(num_subspaces), [&](const Subspace& e, RngStream r) {
        return avg_section_in_subspace(body, e, num_samples, std::move(r));
      });
  scan.max_value = refined.value;
  scan.argmax_basis = std::move(refined.basis);
  return scan;
}

SubspaceMax grassmann_max(int n, int m, int num_subspaces, int refine_iters, RngStream rng,
                          const std::function<Estimate(const Subspace&, RngStream)>& eval) {
  if (m < 1 || m > n) throw std::invalid_argument("grassmann_max: need 1 <= m <= n");
  if (num_subspaces < 1) throw std::invalid_argument("grassmann_max: need >= 1 subspace");
  Estimate best;
  Matrix best_basis;
  for (int j = 0; j < num_subspaces; ++j) {
    RngStream sub = rng.substream(j);
    const Subspace e = grassmann_subspace(n, m, sub);
    const Estimate v = eval(e, sub);
    if (j == 0 || v.value > best.value) {
      best = v;
      best_basis = e.basis();
    }
  }
  return refine_subspace_max(n, std::move(best_basis), best, refine_iters,
                             rng.substream(num_subspaces), eval);
}

Estimate mean_avg_section(const Body& body, int k, int num_subspaces, long num_samples,
                          RngStream rng) {
  require_scan_codim(body, k);
  if (num_subspaces < 2) throw std::invalid_argument("need at least 2 subspaces");
  const int n = body.dim();
  Welford acc;
  bool all_exact = true;
  for (int j = 0; j < num_subspaces; ++j) {
    RngStream sub = rng.substream(j);
    const Subspace e = grassmann_subspace(n, n - k, sub);
    const Estimate v = avg_section_in_subspace(body, e, num_samples, sub);
    acc.add(v.value);
    all_exact = all_exact && v.exact;
  }
  Estimate est = Estimate::from_welford(acc);
  if (all_exact && acc.sample_variance() == 0.0) est = Estimate::exact_value(est.value);
  return est;
}

Estimate mean_avg_section_sphere(const Body& body, int k, long num_samples, RngStream rng) {
  require_scan_codim(body, k);
  const int n = body.dim();
  return radial_moment(body, double(n - k - 1), num_samples, std::move(rng))
      .scaled(constants::omega(n - k - 1));
}

Estimate dual_quermass_R(const Body& body, int k, int num_subspaces, long num_samples,
                         RngStream rng) {
  const SectionPowers sp =
      grassmann_section_powers(body, k, num_subspaces, num_samples, std::move(rng));
  const int n = body.dim();
  return ediv(sp.mean_power, sp.vol.pow(double(n - k)));
}

Estimate dual_affine_quermass_Phi(const Body& body, int k, int num_subspaces,
                                  long num_samples, RngStream rng) {
  const SectionPowers sp =
      grassmann_section_powers(body, k, num_subspaces, num_samples, std::move(rng));
  const int n = body.dim();
  return sp.mean_power.pow(1.0 / n).scaled(constants::omega(n) / constants::omega(n - k));
}

Estimate gamma_witness(const Body& body, int k, int num_subspaces, long num_samples,
                       int refine_iters, RngStream rng) {
  require_scan_codim(body, k);
  const int n = body.dim();
  const GrassmannScan scan = grassmann_max_avg_section(body, k, num_subspaces, num_samples,
                                                       refine_iters, rng.substream(0));
  const long n_global = std::max<long>(num_samples, 10'000);
  const Estimate as_k = avg_section(body, n_global, rng.substream(1));
  const Estimate vol = volume(body, n_global, rng.substream(2));
  const Estimate denom = emul(vol.pow(double(k) / n), scan.max_value);
  return ediv(as_k, denom).pow(1.0 / k);
}

}  // namespace avsec
