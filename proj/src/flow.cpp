#include "grassflow/flow.hpp"

#include <cmath>
#include <limits>

namespace grassflow {

BundleMapSample BundleMapSample::from_complex(ComplexMatrix a_) {
  if (a_.rows() < 1 || a_.cols() < 1)
    throw DimensionMismatch("bundle map must be at least 1x1");
  if (!a_.allFinite()) throw InvalidArgument("bundle map entries must be finite");
  BundleMapSample s;
  s.a_real = realify(a_);
  s.a = std::move(a_);
  s.real_mode = false;
  return s;
}

BundleMapSample BundleMapSample::from_real(Matrix a_) {
  if (a_.rows() < 1 || a_.cols() < 1)
    throw DimensionMismatch("bundle map must be at least 1x1");
  if (!a_.allFinite()) throw InvalidArgument("bundle map entries must be finite");
  BundleMapSample s;
  s.a_real = std::move(a_);
  s.real_mode = true;
  return s;
}

BundleMapSample BundleMapSample::scaled(double lambda) const {
  if (real_mode) return from_real(lambda * a_real);
  return from_complex(lambda * a);
}

FlowTrajectory trajectory(const BundleMapSample& s) {
  const Eigen::Index p = s.p();
  const Eigen::Index q = s.q();

  Matrix e = Matrix::Zero(p + q, p);
  e.topRows(p).setIdentity();
  Matrix d = Matrix::Zero(p + q, p);
  d.bottomRows(q) = s.a_real;
  LinearCurve curve(std::move(e), std::move(d));

  Matrix horiz = Matrix::Zero(p + q, p);
  horiz.topRows(p).setIdentity();
  GrassmannPoint limit_zero{std::move(horiz)};

  // As t -> inf each column e_i + t A e_i tilts fully into the image of A,
  // while directions killed by A stay put: the limit is ker(A) + im(A).
  Eigen::JacobiSVD<Matrix> svd(s.a_real,
                               Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (smax > 0.0 && sv(i) > tol::rank_tol * smax) ++rank;

  Matrix lim = Matrix::Zero(p + q, p);
  lim.block(0, 0, p, p - rank) = svd.matrixV().rightCols(p - rank);
  lim.block(p, p - rank, q, rank) = svd.matrixU().leftCols(rank);
  GrassmannPoint limit_infty{std::move(lim)};

  return FlowTrajectory{std::move(curve), std::move(limit_zero),
                        std::move(limit_infty)};
}

double flow_length(const BundleMapSample& s, double abs_tol) {
  const FlowTrajectory tr = trajectory(s);

  // The fiber in the product space moves only in its first coordinate (the
  // second stays the graph of the map itself), so its length is the length
  // of the moving graph alone.
  //
  // Integration horizon: past T = 1e7 / sigma_min+ the graph basis [I; tA]
  // of a rank-deficient map degrades numerically (kernel directions survive
  // only through O(1/t) cancellations, so the equilibrated smallest singular
  // value falls under sqrt(eps) and computed speeds turn into noise). The
  // arc still ahead of T is at most sum_j arctan(1/(T sigma_j)) ~ 1e-7 * r,
  // and the horizon scales as T(lambda A) = T(A)/lambda, so the truncation
  // cancels exactly in scale-invariance comparisons.
  Eigen::JacobiSVD<Matrix> svd(s.a_real);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  if (smax == 0.0) return 0.0;
  double smin_pos = smax;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol::rank_tol * smax) smin_pos = sv(i);

  const double horizon = 1e7 / smin_pos;
  return length(tr.curve, 0.0, horizon, abs_tol);
}

GrassmannPoint graph_point(const BundleMapSample& s, double t) {
  if (!std::isfinite(t)) throw InvalidArgument("graph_point: t must be finite");
  return point_at(trajectory(s).curve, t);
}

}  // namespace grassflow
