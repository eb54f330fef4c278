#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <utility>

namespace avsec {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Unit vector on S^{n-1}. Construction enforces the norm, so oracles that
/// require unit input can take a Direction and skip re-validation.
class Direction {
 public:
  explicit Direction(Vector v) : v_(std::move(v)) {
    if (v_.size() < 1) throw std::invalid_argument("Direction: empty vector");
    if (std::abs(v_.norm() - 1.0) > 1e-12)
      throw std::invalid_argument("Direction: vector is not unit length");
  }

  /// Normalizes first; rejects (near-)zero input.
  static Direction normalized(const Vector& v) {
    const double nrm = v.norm();
    if (!(nrm > 0.0)) throw std::invalid_argument("Direction: zero vector");
    return Direction(Vector(v / nrm));
  }

  int dim() const { return static_cast<int>(v_.size()); }
  const Vector& vec() const { return v_; }
  operator const Vector&() const { return v_; }
  double operator[](int i) const { return v_[i]; }

 private:
  Vector v_;
};

/// m-dimensional linear subspace of R^n held as an orthonormal basis
/// (n x m, B^T B = I within 1e-10).
class Subspace {
 public:
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {
    const int n = static_cast<int>(basis_.rows());
    const int m = static_cast<int>(basis_.cols());
    if (m < 1 || m > n) throw std::invalid_argument("Subspace: need 1 <= dim <= ambient");
    const Matrix gram = basis_.transpose() * basis_;
    if ((gram - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() > 1e-10)
      throw std::invalid_argument("Subspace: basis is not orthonormal");
  }

  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }

  /// Lift a coordinate vector of the subspace into R^n.
  Vector embed(const Vector& y) const { return basis_ * y; }

  /// Orthogonal projector B B^T onto the subspace.
  Matrix projector() const { return basis_ * basis_.transpose(); }

  static Subspace span_of_axes(int n, std::initializer_list<int> axes) {
    Matrix b = Matrix::Zero(n, static_cast<Eigen::Index>(axes.size()));
    int c = 0;
    for (int a : axes) b(a, c++) = 1.0;
    return Subspace(b);
  }

 private:
  Matrix basis_;
};

}  // namespace avsec
