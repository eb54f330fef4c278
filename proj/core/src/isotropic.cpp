#include "avsec/isotropic.hpp"

#include <cmath>

#include "avsec/constants.hpp"

namespace avsec {

namespace {

struct McMoments {
  BodyMoments moments;
  double l_value = 0.0;
  double l_stderr = 0.0;
};

double l_from(const Matrix& cov, double vol, int n) {
  const double det = cov.determinant();
  if (!(det > 0.0)) throw std::domain_error("isotropic_constant: singular covariance");
  return std::pow(det, 1.0 / (2.0 * n)) / std::pow(vol, 1.0 / n);
}

/// One rejection-sampling pass; the batch split gives a standard error for
/// the (nonlinear) isotropic constant via batch means.
McMoments mc_moments(const Body& body, long num_points, RngStream& rng) {
  const int n = body.dim();
  if (num_points < 16) throw std::invalid_argument("body_moments: need at least 16 points");
  const double ball_vol =
      constants::omega(n) * std::pow(body.circumradius_upper(), n);

  constexpr int num_batches = 16;
  const long per_batch = num_points / num_batches;
  Vector sum = Vector::Zero(n);
  Matrix sum_outer = Matrix::Zero(n, n);
  std::uint64_t attempts = 0;
  long total = 0;

  Welford l_batches;
  Vector bsum = Vector::Zero(n);
  Matrix bouter = Matrix::Zero(n, n);
  std::uint64_t battempts = 0;
  long bcount = 0;

  auto flush_batch = [&]() {
    if (bcount < 2 || battempts == 0) return;
    const Vector mean = bsum / double(bcount);
    const Matrix cov =
        (bouter / double(bcount) - mean * mean.transpose()) * double(bcount) / double(bcount - 1);
    const double vol = ball_vol * double(bcount) / double(battempts);
    l_batches.add(l_from(cov, vol, n));
  };

  for (long i = 0; i < num_points; ++i) {
    const BodySample s = body_point(body, rng);
    sum += s.point;
    sum_outer += s.point * s.point.transpose();
    attempts += s.attempts;
    bsum += s.point;
    bouter += s.point * s.point.transpose();
    battempts += s.attempts;
    ++bcount;
    ++total;
    if (bcount == per_batch) {
      flush_batch();
      bsum.setZero();
      bouter.setZero();
      battempts = 0;
      bcount = 0;
    }
  }
  flush_batch();

  const Vector mean = sum / double(total);
  const Matrix cov =
      (sum_outer / double(total) - mean * mean.transpose()) * double(total) / double(total - 1);
  const double acc_rate = double(total) / double(attempts);
  const double vol = ball_vol * acc_rate;
  const double vol_se = ball_vol * std::sqrt(acc_rate * (1.0 - acc_rate) / double(attempts));

  McMoments out;
  out.moments = BodyMoments{mean, cov, Estimate{vol, vol_se, total, false, true}, total, false};
  out.l_value = l_from(cov, vol, n);
  out.l_stderr = l_batches.count() > 1 ? l_batches.stderr_of_mean() : 0.0;
  return out;
}

}  // namespace

BodyMoments body_moments(const Body& body, long num_points, RngStream rng,
                         MomentsMethod method) {
  if (method == MomentsMethod::Auto) {
    if (auto em = body.exact_moments())
      return BodyMoments{em->barycenter, em->covariance, Estimate::exact_value(em->volume), 0,
                         true};
  }
  return mc_moments(body, num_points, rng).moments;
}

Estimate isotropic_constant(const Body& body, long num_points, RngStream rng,
                            MomentsMethod method) {
  const int n = body.dim();
  if (method == MomentsMethod::Auto) {
    if (auto em = body.exact_moments())
      return Estimate::exact_value(l_from(em->covariance, em->volume, n));
  }
  const McMoments mm = mc_moments(body, num_points, rng);
  return Estimate{mm.l_value, mm.l_stderr, num_points, false, true};
}

double isotropy_defect(const Matrix& cov) {
  const int n = static_cast<int>(cov.rows());
  const double scale = cov.trace() / n;
  if (!(scale > 0.0)) throw std::domain_error("isotropy_defect: non-positive trace");
  Eigen::SelfAdjointEigenSolver<Matrix> es(cov - scale * Matrix::Identity(n, n));
  return es.eigenvalues().cwiseAbs().maxCoeff() / scale;
}

IsotropicPosition isotropic_position(const Body& body, long num_points, RngStream rng,
                                     MomentsMethod method) {
  const int n = body.dim();
  const BodyMoments m = body_moments(body, num_points, rng.substream(0), method);

  // bodies that are centered by construction are never recentred off a noisy
  // barycenter estimate; only genuinely uncentered ones are translated
  Body centered = body;
  Vector shift = Vector::Zero(n);
  const double size = std::max(1.0, body.circumradius_upper());
  if (!body.is_centered() && m.barycenter.norm() > 1e-9 * size) {
    shift = m.barycenter;
    centered = body.translated(-shift);
  }

  Eigen::SelfAdjointEigenSolver<Matrix> es(m.covariance);
  const double floor = 1e-12 * es.eigenvalues().maxCoeff();
  if (!(es.eigenvalues().minCoeff() > 0.0))
    throw std::domain_error("isotropic_position: covariance is not positive-definite");
  Vector inv_sqrt = es.eigenvalues().cwiseMax(floor).cwiseSqrt().cwiseInverse();
  const Matrix w = es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose();

  const double det_w = std::pow(inv_sqrt.prod(), 1.0);
  const double scale = std::pow(det_w * m.volume.value, -1.0 / n);
  const Matrix t = scale * w;
  Body image = linear_image(t, centered);

  Estimate l = m.exact ? Estimate::exact_value(l_from(m.covariance, m.volume.value, n))
                       : isotropic_constant(body, num_points, rng.substream(1), method);

  const BodyMoments im = body_moments(image, num_points, rng.substream(2), method);
  const double cert = isotropy_defect(im.covariance);

  return IsotropicPosition{t, shift, std::move(image), l, cert};
}

}  // namespace avsec
