#include "grassflow/grassmann.hpp"

#include <algorithm>
#include <cmath>

#include "grassflow/rng.hpp"

namespace grassflow {

namespace {
constexpr double kHalfPi = 1.5707963267948966;
// Fixed seed for the Gaussian block used in frame completion.
constexpr std::uint64_t kFrameSeed = 0x67726173ull;
}  // namespace

GrassmannPoint GrassmannPoint::from_orthonormal(Matrix b) {
  if (b.rows() < b.cols() || b.cols() < 1)
    throw DimensionMismatch("basis must be (p+q) x p with p >= 1, q >= 0");
  const double defect =
      (b.transpose() * b - Matrix::Identity(b.cols(), b.cols())).norm();
  if (defect > tol::ortho_tol)
    throw NotOrthonormal("basis columns are not orthonormal (defect " +
                         std::to_string(defect) + ")");
  return GrassmannPoint{std::move(b)};
}

GrassmannPoint GrassmannPoint::from_span(const Matrix& m) {
  return GrassmannPoint{qr_thin(m).q};
}

GrassTangent GrassTangent::horizontal(GrassmannPoint at, const Matrix& raw) {
  Matrix delta = raw - at.basis * (at.basis.transpose() * raw);
  return GrassTangent{std::move(at), std::move(delta)};
}

PrincipalAngles principal_angles(const GrassmannPoint& v,
                                 const GrassmannPoint& w) {
  if (v.ambient() != w.ambient() || v.dim() != w.dim())
    throw DimensionMismatch("principal_angles: shapes differ");
  const Eigen::Index p = v.dim();

  const Matrix overlap = v.basis.transpose() * w.basis;  // p x p
  Eigen::JacobiSVD<Matrix> cos_svd(overlap);
  // Cosines descending => angles ascending by index already.
  Eigen::VectorXd theta(p);
  for (Eigen::Index i = 0; i < p; ++i)
    theta(i) = std::acos(std::clamp(cos_svd.singularValues()(i), 0.0, 1.0));

  // Sine route: singular values of (I - VV^T) W are sin(theta), descending.
  const Matrix residual = w.basis - v.basis * overlap;
  Eigen::JacobiSVD<Matrix> sin_svd(residual);
  for (Eigen::Index i = 0; i < p; ++i) {
    if (theta(i) < 0.5 * kHalfPi) {
      const double s =
          std::clamp(sin_svd.singularValues()(p - 1 - i), 0.0, 1.0);
      theta(i) = std::asin(s);
    }
  }
  std::sort(theta.data(), theta.data() + theta.size());
  return PrincipalAngles{std::move(theta)};
}

double geodesic_distance(const GrassmannPoint& v, const GrassmannPoint& w) {
  return principal_angles(v, w).l2();
}

double angle_metric(const GrassmannPoint& v, const GrassmannPoint& w) {
  return principal_angles(v, w).largest();
}

bool same_span(const GrassmannPoint& v, const GrassmannPoint& w,
               double tolerance) {
  if (v.ambient() != w.ambient() || v.dim() != w.dim()) return false;
  return angle_metric(v, w) <= tolerance;
}

Geodesic::Geodesic(const GrassTangent& tangent) {
  Eigen::JacobiSVD<Matrix> svd(tangent.delta,
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  u_ = svd.matrixU();
  w_ = svd.matrixV();
  sigma_ = svd.singularValues();
  vw_ = tangent.at.basis * w_;
}

GrassmannPoint Geodesic::at(double t) const {
  const Eigen::ArrayXd st = sigma_.array() * t;
  Matrix b = (vw_ * st.cos().matrix().asDiagonal() +
              u_ * st.sin().matrix().asDiagonal()) *
             w_.transpose();
  // b has exactly orthonormal columns up to roundoff (U is orthogonal to the
  // basis because the delta is horizontal); a QR pass cleans the roundoff.
  return GrassmannPoint::from_span(b);
}

namespace {

void require_base_point(const GrassmannPoint& v, const GrassTangent& delta) {
  if (!same_span(v, delta.at))
    throw TangentMismatch("tangent is not attached at the given point");
}

// Orthonormal complement via QR of [basis | Gaussian block], fixed seed.
Matrix orthonormal_complement(const Matrix& basis) {
  const Eigen::Index n = basis.rows();
  const Eigen::Index p = basis.cols();
  const Eigen::Index q = n - p;
  Rng rng(kFrameSeed);
  for (std::uint64_t attempt = 0; attempt < 8; ++attempt) {
    Matrix aug(n, n);
    aug.leftCols(p) = basis;
    aug.rightCols(q) = rng.stream(attempt).gaussian(n, q);
    try {
      return qr_thin(aug).q.rightCols(q);
    } catch (const RankDeficient&) {
      continue;  // astronomically unlikely; next substream
    }
  }
  throw Error("frame completion failed");
}

}  // namespace

GrassmannPoint geodesic_closed_form(const GrassmannPoint& v,
                                    const GrassTangent& delta, double t) {
  require_base_point(v, delta);
  return Geodesic(delta).at(t);
}

GrassmannPoint geodesic_via_exp(const GrassmannPoint& v,
                                const GrassTangent& delta, double t) {
  require_base_point(v, delta);
  const Matrix& b = delta.at.basis;
  const Eigen::Index n = b.rows();
  const Eigen::Index p = b.cols();
  const Eigen::Index q = n - p;

  const Matrix bperp = orthonormal_complement(b);
  const Matrix h = bperp.transpose() * delta.delta;  // q x p

  Matrix s = Matrix::Zero(n, n);
  s.topRightCorner(p, q) = -h.transpose();
  s.bottomLeftCorner(q, p) = h;

  Matrix frame(n, n);
  frame.leftCols(p) = b;
  frame.rightCols(q) = bperp;

  const Matrix rotated = frame * skew_exp(t * s).leftCols(p);
  return GrassmannPoint::from_span(rotated);
}

}  // namespace grassflow
