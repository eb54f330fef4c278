#include "avsec/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "avsec/constants.hpp"
#include "avsec/json_util.hpp"

namespace avsec {

std::string to_string(BodyType t) {
  switch (t) {
    case BodyType::Ball: return "ball";
    case BodyType::Ellipsoid: return "ellipsoid";
    case BodyType::Cube: return "cube";
    case BodyType::CrossPolytope: return "cross_polytope";
    case BodyType::RegularSimplex: return "regular_simplex";
    case BodyType::LpBall: return "lp_ball";
    case BodyType::HPolytope: return "h_polytope";
    case BodyType::LinearImage: return "linear_image";
    case BodyType::Section: return "section";
    case BodyType::RadialSum: return "radial_sum";
  }
  return "unknown";
}

namespace detail {

class BodyImpl {
 public:
  explicit BodyImpl(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("body dimension must be >= 1");
  }
  virtual ~BodyImpl() = default;

  int dim() const { return dim_; }
  virtual BodyType type() const = 0;
  virtual bool contains(const Vector& x) const = 0;
  virtual double radial(const Direction& theta) const;
  virtual bool has_support() const { return false; }
  virtual double support(const Direction&) const {
    throw std::domain_error("support: no support oracle for " + to_string(type()));
  }
  virtual double circumradius() const;
  virtual double inradius() const;
  virtual bool radii_numeric() const;
  virtual double circumradius_upper() const {
    return radii_numeric() ? 1.1 * circumradius() : circumradius();
  }
  virtual bool is_convex() const = 0;
  virtual bool is_origin_symmetric() const = 0;
  virtual bool is_centered() const { return is_origin_symmetric(); }
  virtual std::optional<double> exact_volume() const { return std::nullopt; }
  virtual std::optional<Matrix> quadratic_form() const { return std::nullopt; }
  virtual std::optional<Body::ExactMoments> exact_moments() const { return std::nullopt; }
  virtual std::optional<std::vector<Facet>> facets() const { return std::nullopt; }
  virtual std::optional<std::vector<Vector>> vertices() const { return std::nullopt; }
  virtual nlohmann::json to_json() const = 0;

 protected:
  int dim_;
};

namespace {

void check_dim(const BodyImpl& b, const Vector& x, const char* what) {
  if (static_cast<int>(x.size()) != b.dim())
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

/// Deterministic sampled extremum of rho over the sphere: many random starts,
/// then a greedy pass with shrinking Gaussian perturbations. Lower bound for
/// a max, upper bound for a min.
double extremal_radial(const BodyImpl& body, bool maximize, int starts = 10000) {
  const int n = body.dim();
  RngStream rng(0x6176736563u, 2 * static_cast<std::uint64_t>(n) + (maximize ? 1 : 0));
  auto draw_dir = [&](RngStream& r) {
    Vector g(n);
    do {
      for (int i = 0; i < n; ++i) g[i] = r.gaussian();
    } while (g.norm() < 1e-12);
    return Direction::normalized(g);
  };
  auto score = [&](const Direction& d) {
    const double rho = body.radial(d);
    return maximize ? rho : -rho;
  };

  Direction best = draw_dir(rng);
  double best_val = score(best);
  for (int s = 1; s < starts; ++s) {
    Direction d = draw_dir(rng);
    const double v = score(d);
    if (v > best_val) {
      best_val = v;
      best = d;
    }
  }
  double step = 0.5;
  int fails = 0;
  while (step > 1e-10) {
    Vector g(n);
    for (int i = 0; i < n; ++i) g[i] = rng.gaussian();
    Direction cand = Direction::normalized(best.vec() + step * g);
    const double v = score(cand);
    if (v > best_val) {
      best_val = v;
      best = cand;
      fails = 0;
    } else if (++fails >= 12) {
      step *= 0.5;
      fails = 0;
    }
  }
  return maximize ? best_val : -best_val;
}

double max_vertex_norm(const std::vector<Vector>& vs) {
  double r = 0.0;
  for (const auto& v : vs) r = std::max(r, v.norm());
  return r;
}

double min_facet_distance(const std::vector<Facet>& fs) {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& f : fs) r = std::min(r, f.offset / f.normal.norm());
  return r;
}

double support_hom(const BodyImpl& b, const Vector& v) {
  const double nrm = v.norm();
  if (nrm == 0.0) return 0.0;
  return nrm * b.support(Direction::normalized(v));
}

std::pair<double, double> quadratic_form_radii(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo <= 0.0) throw std::domain_error("quadratic form is not positive-definite");
  return {1.0 / std::sqrt(lo), 1.0 / std::sqrt(hi)};  // {circumradius, inradius}
}

}  // namespace

double BodyImpl::radial(const Direction& theta) const {
  check_dim(*this, theta.vec(), "radial");
  return radial_by_bisection([this](const Vector& x) { return contains(x); }, theta, 1.0);
}

double BodyImpl::circumradius() const {
  if (auto q = quadratic_form()) return quadratic_form_radii(*q).first;
  if (auto vs = vertices()) return max_vertex_norm(*vs);
  return extremal_radial(*this, true);
}

double BodyImpl::inradius() const {
  if (auto q = quadratic_form()) return quadratic_form_radii(*q).second;
  if (auto fs = facets()) return min_facet_distance(*fs);
  return extremal_radial(*this, false);
}

bool BodyImpl::radii_numeric() const {
  if (quadratic_form()) return false;
  return !(vertices() && facets());
}

// ---------------------------------------------------------------------------
// canonical variants

class BallImpl final : public BodyImpl {
 public:
  BallImpl(int dim, double r) : BodyImpl(dim), r_(r) {
    if (!(r > 0.0)) throw std::invalid_argument("ball: radius must be positive");
  }
  BodyType type() const override { return BodyType::Ball; }
  bool contains(const Vector& x) const override {
    check_dim(*this, x, "contains");
    return x.norm() <= r_;
  }
  double radial(const Direction&) const override { return r_; }
  bool has_support() const override { return true; }
  double support(const Direction&) const override { return r_; }
  double circumradius() const override { return r_; }
  double inradius() const override { return r_; }
  bool radii_numeric() const override { return false; }
  bool is_convex() const override { return true; }
  bool is_origin_symmetric() const override { return true; }
  std::optional<double> exact_volume() const override {
    return constants::omega(dim_) * std::pow(r_, dim_);
  }
  std::optional<Matrix> quadratic_form() const override {
    return Matrix(Matrix::Identity(dim_, dim_) / (r_ * r_));
  }
  std::optional<Body::ExactMoments> exact_moments() const override {
    // E[x_i^2] = r^2 / (n + 2) for the uniform distribution on a ball
    return Body::ExactMoments{Vector::Zero(dim_),
                              Matrix(Matrix::Identity(dim_, dim_) * (r_ * r_ / (dim_ + 2))),
                              *exact_volume()};
  }
  nlohmann::json to_json() const override {
    return {{"type", "ball"}, {"dim", dim_}, {"radius", r_}};
  }

 private:
  double r_;
};

class EllipsoidImpl final : public BodyImpl {
 public:
  EllipsoidImpl(int dim, Matrix m) : BodyImpl(dim), m_(std::move(m)) {
    if (m_.rows() != dim || m_.cols() != dim)
      throw std::invalid_argument("ellipsoid: matrix shape mismatch");
    const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw std::invalid_argument("ellipsoid: matrix is not symmetric");
    m_ = 0.5 * (m_ + m_.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw std::invalid_argument("ellipsoid: matrix is not positive-definite");
    evals_ = es.eigenvalues();
    minv_ = es.eigenvectors() * evals_.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  }
  BodyType type() const override { return BodyType::Ellipsoid; }
  bool contains(const Vector& x) const override {
    check_dim(*this, x, "contains");
    return x.dot(m_ * x) <= 1.0;
  }
  double radial(const Direction& theta) const override {
    check_dim(*this, theta.vec(), "radial");
    return 1.0 / std::sqrt(theta.vec().dot(m_ * theta.vec()));
  }
  bool has_support() const override { return true; }
  double support(const Direction& theta) const override {
    return std::sqrt(theta.vec().dot(minv_ * theta.vec()));
  }
  double circumradius() const override { return 1.0 / std::sqrt(evals_.minCoeff()); }
  double inradius() const override { return 1.0 / std::sqrt(evals_.maxCoeff()); }
  bool radii_numeric() const override { return false; }
  bool is_convex() const override { return true; }
  bool is_origin_symmetric() const override { return true; }
  std::optional<double> exact_volume() const override {
    return constants::omega(dim_) / std::sqrt(evals_.prod());
  }
  std::optional<Matrix> quadratic_form() const override { return m_; }
  std::optional<Body::ExactMoments> exact_moments() const override {
    return Body::ExactMoments{Vector::Zero(dim_), Matrix(minv_ / (dim_ + 2)), *exact_volume()};
  }
  nlohmann::json to_json() const override {
    return {{"type", "ellipsoid"}, {"dim", dim_}, {"M", matrix_to_json(m_)}};
  }

 private:
  Matrix m_, minv_;
  Vector evals_;
};

class CubeImpl final : public BodyImpl {
 public:
  CubeImpl(int dim, double h) : BodyImpl(dim), h_(h) {
    if (!(h > 0.0)) throw std::invalid_argument("cube: half-side must be positive");
  }
  BodyType type() const override { return BodyType::Cube; }
  bool contains(const Vector& x) const override {
    check_dim(*this, x, "contains");
    return x.cwiseAbs().maxCoeff() <= h_;
  }
  double radial(const Direction& theta) const override {
    check_dim(*this, theta.vec(), "radial");
    return h_ / theta.vec().cwiseAbs().maxCoeff();
  }
  bool has_support() const override { return true; }
  double support(const Direction& theta) const override {
    return h_ * theta.vec().cwiseAbs().sum();
  }
  double circumradius() const override { return h_ * std::sqrt(double(dim_)); }
  double inradius() const override { return h_; }
  bool radii_numeric() const override { return false; }
  bool is_convex() const override { return true; }
  bool is_origin_symmetric() const override { return true; }
  std::optional<double> exact_volume() const override { return std::pow(2.0 * h_, dim_); }
  std::optional<Body::ExactMoments> exact_moments() const override {
    return Body::ExactMoments{Vector::Zero(dim_),
                              Matrix(Matrix::Identity(dim_, dim_) * (h_ * h_ / 3.0)),
                              *exact_volume()};
  }
  std::optional<std::vector<Facet>> facets() const override {
    std::vector<Facet> fs;
    fs.reserve(2 * dim_);
    for (int i = 0; i < dim_; ++i) {
      Vector e = Vector::Zero(dim_);
      e[i] = 1.0;
      fs.push_back({e, h_});
      fs.push_back({-e, h_});
    }
    return fs;
  }
  std::optional<std::vector<Vector>> vertices() const override {
    if (dim_ > 16) return std::nullopt;
    std::vector<Vector> vs;
    vs.reserve(std::size_t(1) << dim_);
    for (std::uint32_t mask = 0; mask < (1u << dim_); ++mask) {
      Vector v(dim_);
      for (int i = 0; i < dim_; ++i) v[i] = (mask >> i) & 1u ? h_ : -h_;
      vs.push_back(std::move(v));
    }
    return vs;
  }
  nlohmann::json to_json() const override {
    return {{"type", "cube"}, {"dim", dim_}, {"half_side", h_}};
  }

 private:
  double h_;
};

class CrossPolytopeImpl final : public BodyImpl {
 public:
  CrossPolytopeImpl(int dim, double s) : BodyImpl(dim), s_(s) {
    if (!(s > 0.0)) throw std::invalid_argument("cross_polytope: scale must be positive");
  }
  BodyType type() const override { return BodyType::CrossPolytope; }
  bool contains(const Vector& x) const override {
    check_dim(*this, x, "contains");
    return x.cwiseAbs().sum() <= s_;
  }
  double radial(const Direction& theta) const override {
    check_dim(*this, theta.vec(), "radial");
    return s_ / theta.vec().cwiseAbs().sum();
  }
  bool has_support() const override { return true; }
  double support(const Direction& theta) const override {
    return s_ * theta.vec().cwiseAbs().maxCoeff();
  }
  double circumradius() const override { return s_; }
  double inradius() const override { return s_ / std::sqrt(double(dim_)); }
  bool radii_numeric() const override { return false; }
  bool is_convex() const override { return true; }
  bool is_origin_symmetric() const override { return true; }
  std::optional<double> exact_volume() const override {
    return std::pow(2.0 * s_, dim_) / std::tgamma(dim_ + 1.0);
  }
  std::optional<Body::ExactMoments> exact_moments() const override {
    // E[x_i^2] = 2 s^2 / ((n+1)(n+2)), from the Dirichlet integral over the
    // orthant simplices
    const double c = 2.0 * s_ * s_ / (double(dim_ + 1) * double(dim_ + 2));
    return Body::ExactMoments{Vector::Zero(dim_), Matrix(Matrix::Identity(dim_, dim_) * c),
                              *exact_volume()};
  }
  std::optional<std::vector<Facet>> facets() const override {
    if (dim_ > 16) return std::nullopt;
    std::vector<Facet> fs;
    fs.reserve(std::size_t(1) << dim_);
    for (std::uint32_t mask = 0; mask < (1u << dim_); ++mask) {
      Vector a(dim_);
      for (int i = 0; i < dim_; ++i) a[i] = (mask >> i) & 1u ? 1.0 : -1.0;
      fs.push_back({std::move(a), s_});
    }
    return fs;
  }
  std::optional<std::vector<Vector>> vertices() const override {
    std::vector<Vector> vs;
    vs.reserve(2 * dim_);
    for (int i = 0; i < dim_; ++i) {
      Vector v = Vector::Zero(dim_);
      v[i] = s_;
      vs.push_back(v);
      vs.push_back(-v);
    }
    return vs;
  }
  nlohmann::json to_json() const override {
    return {{"type", "cross_polytope"}, {"dim", dim_}, {"scale", s_}};
  }

 private:
  double s_;
};

class LpBallImpl final : public BodyImpl {
 public:
  LpBallImpl(int dim, double p, double s) : BodyImpl(dim), p_(p), s_(s) {
    if (!(s > 0.0)) throw std::invalid_argument("lp_ball: scale must be positive");
    if (!(p >= 1.0)) throw std::invalid_argument("lp_ball: p must be in [1, inf]");
  }
  BodyType type() const override { return BodyType::LpBall; }
  bool contains(const Vector& x) const override {
    check_dim(*this, x, "contains");
    return p_norm(x) <= s_;
  }
  double radial(const Direction& theta) const override {
    check_dim(*this, theta.vec(), "radial");
    return s_ / p_norm(theta.vec());
  }
  bool has_support() const override { return true; }
  double support(const Direction& theta) const override {
    // dual norm: q = p / (p - 1)
    const Vector& t = theta.vec();
    if (p_ == 1.0) return s_ * t.cwiseAbs().maxCoeff();
    if (std::isinf(p_)) return s_ * t.cwiseAbs().sum();
    const double q = p_ / (p_ - 1.0);
    return s_ * std::pow(t.cwiseAbs().array().pow(q).sum(), 1.0 / q);
  }
  double circumradius() const override {
    return p_ >= 2.0 ? s_ * diag_factor() : s_;
  }
  double inradius() const override { return p_ >= 2.0 ? s_ : s_ * diag_factor(); }
  bool radii_numeric() const override { return false; }
  bool is_convex() const override { return true; }
  bool is_origin_symmetric() const override { return true; }
  std::optional<double> exact_volume() const override {
    if (std::isinf(p_)) return std::pow(2.0 * s_, dim_);
    // Dirichlet: |B_p^n| = (2 Gamma(1 + 1/p))^n / Gamma(1 + n/p)
    const double log_vol = dim_ * (std::numbers::ln2 + std::lgamma(1.0 + 1.0 / p_)) -
                           std::lgamma(1.0 + dim_ / p_) + dim_ * std::log(s_);
    return std::exp(log_vol);
  }
  std::optional<Body::ExactMoments> exact_moments() const override {
    double c;
    if (std::isinf(p_)) {
      c = s_ * s_ / 3.0;
    } else {
      // E[x_i^2] = s^2 Gamma(3/p) Gamma(1 + n/p) / (Gamma(1/p) Gamma(1 + (n+2)/p))
      c = s_ * s_ *
          std::exp(std::lgamma(3.0 / p_) + std::lgamma(1.0 + dim_ / p_) -
                   std::lgamma(1.0 / p_) - std::lgamma(1.0 + (dim_ + 2.0) / p_));
    }
    return Body::ExactMoments{Vector::Zero(dim_), Matrix(Matrix::Identity(dim_, dim_) * c),
                              *exact_volume()};
  }
  std::optional<std::vector<Facet>> facets() const override {
    if (p_ == 1.0) return CrossPolytopeImpl(dim_, s_).facets();
    if (std::isinf(p_)) return CubeImpl(dim_, s_).facets();
    return std::nullopt;
  }
  std::optional<std::vector<Vector>> vertices() const override {
    if (p_ == 1.0) return CrossPolytopeImpl(dim_, s_).vertices();
    if (std::isinf(p_)) return CubeImpl(dim_, s_).vertices();
    return std::nullopt;
  }
  nlohmann::json to_json() const override {
    nlohmann::json j = {{"type", "lp_ball"}, {"dim", dim_}, {"scale", s_}};
    if (std::isinf(p_))
      j["p"] = "inf";
    else
      j["p"] = p_;
    return j;
  }

 private:
  double p_norm(const Vector& x) const {
    if (p_ == 1.0) return x.cwiseAbs().sum();
    if (p_ == 2.0) return x.norm();
    if (std::isinf(p_)) return x.cwiseAbs().maxCoeff();
    return std::pow(x.cwiseAbs().array().pow(p_).sum(), 1.0 / p_);
  }
  double diag_factor() const {
    return std::isinf(p_) ? std::sqrt(double(dim_))
                          : std::pow(double(dim_), 0.5 - 1.0 / p_);
  }
  double p_, s_;
};

class HPolytopeImpl final : public BodyImpl {
 public:
  HPolytopeImpl(int dim, Matrix a, Vector b) : BodyImpl(dim), a_(std::move(a)), b_(std::move(b)) {
    if (a_.cols() != dim || a_.rows() != b_.size() || a_.rows() < 1)
      throw std::invalid_argument("h_polytope: shape mismatch");
    for (Eigen::Index i = 0; i < b_.size(); ++i) {
      if (!(b_[i] > 0.0))
        throw std::invalid_argument("h_polytope: all offsets must be positive (origin interior)");
      if (a_.row(i).norm() < 1e-14)
        throw std::invalid_argument("h_polytope: zero facet normal");
    }
  }
  BodyType type() const override { return BodyType::HPolytope; }
  bool contains(const Vector& x) const override {
    check_dim(*this, x, "contains");
    return ((a_ * x - b_).array() <= 0.0).all();
  }
  double radial(const Direction& theta) const override {
    check_dim(*this, theta.vec(), "radial");
    const Vector d = a_ * theta.vec();
    double rho = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < d.size(); ++i)
      if (d[i] > 0.0) rho = std::min(rho, b_[i] / d[i]);
    if (!std::isfinite(rho))
      throw std::domain_error("h_polytope: unbounded in the requested direction");
    return rho;
  }
  double inradius() const override {
    double r = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < b_.size(); ++i) r = std::min(r, b_[i] / a_.row(i).norm());
    return r;
  }
  bool is_convex() const override { return true; }
  bool is_origin_symmetric() const override {
    // every facet must have a mirrored twin
    for (Eigen::Index i = 0; i < a_.rows(); ++i) {
      bool found = false;
      for (Eigen::Index j = 0; j < a_.rows() && !found; ++j)
        found = (a_.row(i) + a_.row(j)).norm() <= 1e-12 * (1.0 + a_.row(i).norm()) &&
                std::abs(b_[i] - b_[j]) <= 1e-12 * b_[i];
      if (!found) return false;
    }
    return true;
  }
  std::optional<std::vector<Facet>> facets() const override {
    std::vector<Facet> fs;
    fs.reserve(a_.rows());
    for (Eigen::Index i = 0; i < a_.rows(); ++i) fs.push_back({a_.row(i).transpose(), b_[i]});
    return fs;
  }
  nlohmann::json to_json() const override {
    return {{"type", "h_polytope"},
            {"dim", dim_},
            {"A", matrix_to_json(a_)},
            {"b", vector_to_json(b_)}};
  }

 private:
  Matrix a_;
  Vector b_;
};

class RegularSimplexImpl final : public BodyImpl {
 public:
  explicit RegularSimplexImpl(int dim) : BodyImpl(dim), verts_(dim, dim + 1) {
    // centered standard-basis embedding of R^{n+1}, brought down to R^n by
    // the Householder reflection that sends (1,...,1)/sqrt(n+1) to e_{n+1};
    // vertices rescaled to unit circumradius
    const int n = dim;
    Vector a = Vector::Constant(n + 1, 1.0 / std::sqrt(double(n + 1)));
    Vector w = a;
    w[n] -= 1.0;
    w.normalize();
    const double unscale = std::sqrt(double(n + 1) / double(n));
    for (int i = 0; i <= n; ++i) {
      Vector u = Vector::Constant(n + 1, -1.0 / double(n + 1));
      u[i] += 1.0;
      Vector hu = u - 2.0 * w * w.dot(u);
      verts_.col(i) = hu.head(n) * unscale;
    }
    Matrix edges(n, n);
    for (int i = 0; i < n; ++i) edges.col(i) = verts_.col(i + 1) - verts_.col(0);
    volume_ = std::abs(edges.partialPivLu().determinant()) / std::tgamma(n + 1.0);
  }
  BodyType type() const override { return BodyType::RegularSimplex; }
  bool contains(const Vector& x) const override {
    check_dim(*this, x, "contains");
    for (int i = 0; i <= dim_; ++i)
      if (-verts_.col(i).dot(x) > 1.0 / dim_) return false;
    return true;
  }
  double radial(const Direction& theta) const override {
    check_dim(*this, theta.vec(), "radial");
    double rho = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= dim_; ++i) {
      const double d = -verts_.col(i).dot(theta.vec());
      if (d > 0.0) rho = std::min(rho, 1.0 / (dim_ * d));
    }
    return rho;
  }
  bool has_support() const override { return true; }
  double support(const Direction& theta) const override {
    double h = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= dim_; ++i) h = std::max(h, verts_.col(i).dot(theta.vec()));
    return h;
  }
  double circumradius() const override { return 1.0; }
  double inradius() const override { return 1.0 / dim_; }
  bool radii_numeric() const override { return false; }
  bool is_convex() const override { return true; }
  bool is_origin_symmetric() const override { return false; }
  bool is_centered() const override { return true; }
  std::optional<double> exact_volume() const override { return volume_; }
  std::optional<Body::ExactMoments> exact_moments() const override {
    // cov of a simplex with barycenter 0: sum_i v_i v_i^T / ((n+1)(n+2))
    Matrix cov = Matrix::Zero(dim_, dim_);
    for (int i = 0; i <= dim_; ++i) cov += verts_.col(i) * verts_.col(i).transpose();
    cov /= double(dim_ + 1) * double(dim_ + 2);
    return Body::ExactMoments{Vector::Zero(dim_), cov, volume_};
  }
  std::optional<std::vector<Facet>> facets() const override {
    std::vector<Facet> fs;
    fs.reserve(dim_ + 1);
    for (int i = 0; i <= dim_; ++i) fs.push_back({-verts_.col(i), 1.0 / dim_});
    return fs;
  }
  std::optional<std::vector<Vector>> vertices() const override {
    std::vector<Vector> vs;
    vs.reserve(dim_ + 1);
    for (int i = 0; i <= dim_; ++i) vs.push_back(verts_.col(i));
    return vs;
  }
  nlohmann::json to_json() const override {
    return {{"type", "regular_simplex"}, {"dim", dim_}};
  }

 private:
  Matrix verts_;  // n x (n+1), unit circumradius, barycenter 0
  double volume_;
};

// ---------------------------------------------------------------------------
// derived variants

class LinearImageImpl final : public BodyImpl {
 public:
  LinearImageImpl(Matrix t, Body inner)
      : BodyImpl(inner.dim()), t_(std::move(t)), inner_(std::move(inner)) {
    if (t_.rows() != dim_ || t_.cols() != dim_)
      throw std::invalid_argument("linear_image: matrix shape mismatch");
    Eigen::PartialPivLU<Matrix> lu(t_);
    const double det = lu.determinant();
    double hadamard = 1.0;  // scale-free singularity test: |det| / prod ||row||
    for (int i = 0; i < dim_; ++i) hadamard *= std::max(t_.row(i).norm(), 1e-300);
    if (std::abs(det) <= 1e-12 * hadamard)
      throw std::invalid_argument("linear_image: matrix is singular");
    tinv_ = lu.inverse();
    absdet_ = std::abs(det);
  }
  BodyType type() const override { return BodyType::LinearImage; }
  bool contains(const Vector& x) const override {
    check_dim(*this, x, "contains");
    return inner_.contains(tinv_ * x);
  }
  double radial(const Direction& theta) const override {
    check_dim(*this, theta.vec(), "radial");
    const Vector w = tinv_ * theta.vec();
    const double nrm = w.norm();
    return inner_.radial(Direction::normalized(w)) / nrm;
  }
  bool has_support() const override { return inner_.has_support(); }
  double support(const Direction& theta) const override {
    // h_{TK}(theta) = h_K(T^T theta), extended 1-homogeneously
    const Vector v = t_.transpose() * theta.vec();
    const double nrm = v.norm();
    return nrm * inner_.support(Direction::normalized(v));
  }
  bool is_convex() const override { return inner_.is_convex(); }
  bool is_origin_symmetric() const override { return inner_.is_origin_symmetric(); }
  bool is_centered() const override { return inner_.is_centered(); }
  std::optional<double> exact_volume() const override {
    if (auto v = inner_.exact_volume()) return absdet_ * *v;
    return std::nullopt;
  }
  std::optional<Matrix> quadratic_form() const override {
    if (auto q = inner_.quadratic_form()) {
      Matrix m = tinv_.transpose() * (*q) * tinv_;
      return Matrix(0.5 * (m + m.transpose()));
    }
    return std::nullopt;
  }
  std::optional<Body::ExactMoments> exact_moments() const override {
    if (auto m = inner_.exact_moments())
      return Body::ExactMoments{t_ * m->barycenter, t_ * m->covariance * t_.transpose(),
                                absdet_ * m->volume};
    return std::nullopt;
  }
  std::optional<std::vector<Facet>> facets() const override {
    if (auto fs = inner_.facets()) {
      for (auto& f : *fs) f.normal = tinv_.transpose() * f.normal;
      return fs;
    }
    return std::nullopt;
  }
  std::optional<std::vector<Vector>> vertices() const override {
    if (auto vs = inner_.vertices()) {
      for (auto& v : *vs) v = t_ * v;
      return vs;
    }
    return std::nullopt;
  }
  const Matrix& map() const { return t_; }
  const Body& inner() const { return inner_; }
  nlohmann::json to_json() const override {
    return {{"type", "linear_image"},
            {"dim", dim_},
            {"T", matrix_to_json(t_)},
            {"inner", inner_.to_json()}};
  }

 private:
  Matrix t_, tinv_;
  double absdet_;
  Body inner_;
};

class SectionImpl final : public BodyImpl {
 public:
  SectionImpl(Body parent, Matrix basis)
      : BodyImpl(static_cast<int>(basis.cols())), parent_(std::move(parent)),
        basis_(std::move(basis)) {}
  BodyType type() const override { return BodyType::Section; }
  bool contains(const Vector& y) const override {
    check_dim(*this, y, "contains");
    return parent_.contains(basis_ * y);
  }
  double radial(const Direction& phi) const override {
    check_dim(*this, phi.vec(), "radial");
    return parent_.radial(Direction::normalized(basis_ * phi.vec()));
  }
  bool is_convex() const override { return parent_.is_convex(); }
  bool is_origin_symmetric() const override { return parent_.is_origin_symmetric(); }
  // sections of merely centered bodies need not be centered
  bool is_centered() const override { return parent_.is_origin_symmetric(); }
  nlohmann::json to_json() const override {
    return {{"type", "section"},
            {"dim", dim_},
            {"basis", matrix_to_json(basis_)},
            {"inner", parent_.to_json()}};
  }

 private:
  Body parent_;
  Matrix basis_;  // ambient x m, orthonormal columns
};

class RadialSumImpl final : public BodyImpl {
 public:
  RadialSumImpl(Body left, Body right)
      : BodyImpl(left.dim()), left_(std::move(left)), right_(std::move(right)) {
    if (left_.dim() != right_.dim())
      throw std::invalid_argument("radial_sum: dimension mismatch");
  }
  BodyType type() const override { return BodyType::RadialSum; }
  bool contains(const Vector& x) const override {
    check_dim(*this, x, "contains");
    const double nrm = x.norm();
    if (nrm == 0.0) return true;
    return nrm <= radial(Direction::normalized(x));
  }
  double radial(const Direction& theta) const override {
    return left_.radial(theta) + right_.radial(theta);
  }
  double circumradius() const override { return extremal_radial(*this, true); }
  double inradius() const override { return extremal_radial(*this, false); }
  double circumradius_upper() const override {
    return left_.circumradius_upper() + right_.circumradius_upper();
  }
  bool radii_numeric() const override { return true; }
  bool is_convex() const override { return false; }  // not preserved by radial addition
  bool is_origin_symmetric() const override {
    return left_.is_origin_symmetric() && right_.is_origin_symmetric();
  }
  nlohmann::json to_json() const override {
    return {{"type", "radial_sum"},
            {"dim", dim_},
            {"left", left_.to_json()},
            {"right", right_.to_json()}};
  }

 private:
  Body left_, right_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Body facade

Body::Body(std::shared_ptr<const detail::BodyImpl> impl) : impl_(std::move(impl)) {}

Body Body::ball(int dim, double radius) {
  return Body(std::make_shared<detail::BallImpl>(dim, radius));
}
Body Body::ellipsoid(Matrix m) {
  const int n = static_cast<int>(m.rows());
  return Body(std::make_shared<detail::EllipsoidImpl>(n, std::move(m)));
}
Body Body::cube(int dim, double half_side) {
  return Body(std::make_shared<detail::CubeImpl>(dim, half_side));
}
Body Body::cross_polytope(int dim, double scale) {
  return Body(std::make_shared<detail::CrossPolytopeImpl>(dim, scale));
}
Body Body::regular_simplex(int dim) {
  if (dim < 2) throw std::invalid_argument("regular_simplex: dim must be >= 2");
  return Body(std::make_shared<detail::RegularSimplexImpl>(dim));
}
Body Body::lp_ball(int dim, double p, double scale) {
  return Body(std::make_shared<detail::LpBallImpl>(dim, p, scale));
}
Body Body::h_polytope(Matrix a, Vector b) {
  const int n = static_cast<int>(a.cols());
  return Body(std::make_shared<detail::HPolytopeImpl>(n, std::move(a), std::move(b)));
}

int Body::dim() const { return impl_->dim(); }
BodyType Body::type() const { return impl_->type(); }
std::string Body::type_name() const { return to_string(impl_->type()); }
bool Body::contains(const Vector& x) const { return impl_->contains(x); }
double Body::radial(const Direction& theta) const { return impl_->radial(theta); }
double Body::support(const Direction& theta) const { return impl_->support(theta); }
bool Body::has_support() const { return impl_->has_support(); }
double Body::circumradius() const { return impl_->circumradius(); }
double Body::inradius() const { return impl_->inradius(); }
bool Body::radii_numeric() const { return impl_->radii_numeric(); }
double Body::circumradius_upper() const { return impl_->circumradius_upper(); }
bool Body::is_convex() const { return impl_->is_convex(); }
bool Body::is_origin_symmetric() const { return impl_->is_origin_symmetric(); }
bool Body::is_centered() const { return impl_->is_centered(); }
bool Body::is_ellipsoidal() const { return impl_->quadratic_form().has_value(); }
std::optional<double> Body::exact_volume() const { return impl_->exact_volume(); }
std::optional<Matrix> Body::quadratic_form() const { return impl_->quadratic_form(); }
std::optional<Body::ExactMoments> Body::exact_moments() const { return impl_->exact_moments(); }
std::optional<std::vector<Facet>> Body::facets() const { return impl_->facets(); }
std::optional<std::vector<Vector>> Body::vertices() const { return impl_->vertices(); }

Body Body::translated(const Vector& t) const {
  if (static_cast<int>(t.size()) != dim())
    throw std::invalid_argument("translated: dimension mismatch");
  if (t.norm() == 0.0) return *this;
  if (auto fs = facets()) {
    Matrix a(fs->size(), dim());
    Vector b(fs->size());
    for (std::size_t i = 0; i < fs->size(); ++i) {
      a.row(i) = (*fs)[i].normal.transpose();
      b[i] = (*fs)[i].offset + (*fs)[i].normal.dot(t);
    }
    return h_polytope(std::move(a), std::move(b));
  }
  throw std::domain_error("translated: only facet-represented bodies support translation");
}

nlohmann::json Body::to_json() const { return impl_->to_json(); }

Body Body::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw std::invalid_argument("body json: expected an object with a \"type\" field");
  const std::string type = j.at("type").get<std::string>();
  const auto dim_of = [&j]() { return j.at("dim").get<int>(); };
  if (type == "ball") return ball(dim_of(), j.at("radius").get<double>());
  if (type == "ellipsoid") return ellipsoid(matrix_from_json(j.at("M")));
  if (type == "cube") return cube(dim_of(), j.at("half_side").get<double>());
  if (type == "cross_polytope") return cross_polytope(dim_of(), j.at("scale").get<double>());
  if (type == "regular_simplex") return regular_simplex(dim_of());
  if (type == "lp_ball") {
    double p;
    if (j.at("p").is_string()) {
      if (j.at("p").get<std::string>() != "inf")
        throw std::invalid_argument("lp_ball: p must be a number or \"inf\"");
      p = std::numeric_limits<double>::infinity();
    } else {
      p = j.at("p").get<double>();
    }
    return lp_ball(dim_of(), p, j.at("scale").get<double>());
  }
  if (type == "h_polytope")
    return h_polytope(matrix_from_json(j.at("A")), vector_from_json(j.at("b")));
  if (type == "linear_image")
    return linear_image(matrix_from_json(j.at("T")), from_json(j.at("inner")));
  if (type == "section") {
    Matrix basis = matrix_from_json(j.at("basis"));
    return section_body(from_json(j.at("inner")), Subspace(std::move(basis)));
  }
  if (type == "radial_sum")
    return radial_sum(from_json(j.at("left")), from_json(j.at("right")));
  throw std::invalid_argument("body json: unknown type \"" + type + "\"");
}

// ---------------------------------------------------------------------------
// derived-body constructors

Body linear_image(const Matrix& t, const Body& body) {
  return Body(std::make_shared<detail::LinearImageImpl>(t, body));
}

namespace {

// columns that are signed standard basis vectors with distinct axes
std::optional<std::vector<int>> signed_axis_columns(const Matrix& b) {
  std::vector<int> axes;
  std::vector<bool> used(b.rows(), false);
  for (Eigen::Index c = 0; c < b.cols(); ++c) {
    int axis = -1;
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
      const double v = std::abs(b(r, c));
      if (v > 1e-14) {
        if (axis >= 0 || std::abs(v - 1.0) > 1e-14) return std::nullopt;
        axis = static_cast<int>(r);
      }
    }
    if (axis < 0 || used[axis]) return std::nullopt;
    used[axis] = true;
    axes.push_back(axis);
  }
  return axes;
}

}  // namespace

Body section_body(const Body& body, const Subspace& e) {
  if (e.ambient_dim() != body.dim())
    throw std::invalid_argument("section_body: subspace ambient dimension mismatch");
  const Matrix& b = e.basis();
  const int m = e.dim();

  // ellipsoidal bodies restrict to ellipsoids of the pulled-back form
  if (auto q = body.quadratic_form()) {
    Matrix qe = b.transpose() * (*q) * b;
    return Body::ellipsoid(0.5 * (qe + qe.transpose()));
  }

  // coordinate sections of the norm-ball variants keep their type
  if (signed_axis_columns(b)) {
    switch (body.type()) {
      case BodyType::Cube: return Body::cube(m, body.inradius());
      case BodyType::CrossPolytope: return Body::cross_polytope(m, body.circumradius());
      case BodyType::LpBall: {
        const auto j = body.to_json();
        const double p = j.at("p").is_string() ? std::numeric_limits<double>::infinity()
                                               : j.at("p").get<double>();
        return Body::lp_ball(m, p, j.at("scale").get<double>());
      }
      default: break;
    }
  }

  // facet bodies restrict to H-polytopes with normals pulled back by B
  if (auto fs = body.facets()) {
    std::vector<Eigen::Index> keep;
    Matrix a(fs->size(), m);
    Vector off(fs->size());
    Eigen::Index r = 0;
    for (const auto& f : *fs) {
      Vector row = b.transpose() * f.normal;
      if (row.norm() <= 1e-14 * (1.0 + f.normal.norm())) continue;  // facet parallel to E
      a.row(r) = row.transpose();
      off[r] = f.offset;
      ++r;
    }
    if (r > 0) return Body::h_polytope(a.topRows(r), off.head(r));
  }

  return Body(std::make_shared<detail::SectionImpl>(body, b));
}

Body radial_sum(const Body& k, const Body& d) {
  return Body(std::make_shared<detail::RadialSumImpl>(k, d));
}

// ---------------------------------------------------------------------------

double radial_by_bisection(const std::function<bool(const Vector&)>& contains,
                           const Direction& theta, double initial_upper, double rel_tol,
                           int max_iter) {
  double hi = std::max(initial_upper, 1e-12);
  int growth = 0;
  while (contains(hi * theta.vec())) {
    hi *= 2.0;
    if (++growth > 1024) throw std::domain_error("radial_by_bisection: body appears unbounded");
  }
  double lo = 0.0;
  for (int it = 0; it < max_iter && (hi - lo) > rel_tol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (contains(mid * theta.vec()))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double radial_distance(const Body& k, const Body& d, long num_samples, RngStream rng) {
  if (k.dim() != d.dim()) throw std::invalid_argument("radial_distance: dimension mismatch");
  if (num_samples < 1) throw std::invalid_argument("radial_distance: need at least one sample");
  const int n = k.dim();
  auto gap = [&](const Direction& t) { return std::abs(k.radial(t) - d.radial(t)); };
  auto draw = [&]() {
    Vector g(n);
    do {
      for (int i = 0; i < n; ++i) g[i] = rng.gaussian();
    } while (g.norm() < 1e-12);
    return Direction::normalized(g);
  };
  Direction best = draw();
  double best_val = gap(best);
  for (long s = 1; s < num_samples; ++s) {
    Direction t = draw();
    const double v = gap(t);
    if (v > best_val) {
      best_val = v;
      best = t;
    }
  }
  double step = 0.25;
  int fails = 0;
  while (step > 1e-12) {
    Vector g(n);
    for (int i = 0; i < n; ++i) g[i] = rng.gaussian();
    Direction cand = Direction::normalized(best.vec() + step * g);
    const double v = gap(cand);
    if (v > best_val) {
      best_val = v;
      best = cand;
      fails = 0;
    } else if (++fails >= 12) {
      step *= 0.5;
      fails = 0;
    }
  }
  return best_val;
}

}  // namespace avsec
