#include "avsec/sampling.hpp"

#include <cmath>

namespace avsec {

Direction sphere_point(int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sphere_point: dimension must be >= 1");
  Vector g(n);
  double nrm = 0.0;
  do {
    for (int i = 0; i < n; ++i) g[i] = rng.gaussian();
    nrm = g.norm();
  } while (nrm < 1e-12);
  return Direction::normalized(g);
}

Subspace grassmann_subspace(int n, int m, RngStream& rng) {
  if (m < 1 || m > n) throw std::invalid_argument("grassmann_subspace: need 1 <= m <= n");
  Matrix g(n, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, m);
  const Matrix r = qr.matrixQR().topRows(m);
  for (int j = 0; j < m; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return Subspace(std::move(q));
}

Subspace complement(const Subspace& e) {
  const int n = e.ambient_dim();
  const int m = e.dim();
  if (m >= n) throw std::invalid_argument("complement: subspace is already full-dimensional");
  Eigen::HouseholderQR<Matrix> qr(e.basis());
  const Matrix full = qr.householderQ() * Matrix::Identity(n, n);
  return Subspace(full.rightCols(n - m));
}

Matrix random_rotation(int n, RngStream& rng) {
  Matrix q = grassmann_subspace(n, n, rng).basis();
  if (q.determinant() < 0.0) q.col(0) = -q.col(0);
  return q;
}

BodySample body_point(const Body& body, RngStream& rng, std::uint64_t max_attempts) {
  const int n = body.dim();
  if (n > 12)
    throw std::invalid_argument("body_point: rejection sampling is limited to dimension <= 12");
  const double radius = body.circumradius_upper();
  std::uint64_t attempts = 0;
  while (attempts < max_attempts) {
    ++attempts;
    const Direction dir = sphere_point(n, rng);
    const double u = rng.uniform();
    const Vector x = radius * std::pow(u, 1.0 / n) * dir.vec();
    if (body.contains(x)) return BodySample{x, attempts};
  }
  throw budget_error("body_point: rejection budget exceeded (acceptance below ~1e-7)");
}

}  // namespace avsec
