#include "grassflow/linear_curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace grassflow {

namespace {

constexpr double kHalfPi = 1.5707963267948966;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Factor {
  Matrix q;
  Matrix r;
};

// Thin QR of E + tD with the rank test and factorization run on the
// column-equilibrated matrix. The span is invariant under column scaling,
// and graph-type curves at large |t| mix column norms 1 and |t|: the raw
// sigma ratio would misread that scaling as rank loss (and the triangular
// solve would lose all accuracy) even though the normalized basis is
// perfectly conditioned.
Factor factor_at(const LinearCurve& c, double t) {
  Matrix m = c.e + t * c.d;
  Eigen::VectorXd norms(m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    norms(j) = m.col(j).norm();
    if (norms(j) == 0.0) throw RankDrop(t, 0.0);
    m.col(j) /= norms(j);
  }
  try {
    auto qr = qr_thin(m);
    qr.r = qr.r * norms.asDiagonal();
    return {std::move(qr.q), std::move(qr.r)};
  } catch (const RankDeficient& e) {
    throw RankDrop(t, e.sigma_min);
  }
}

// X = M * R^{-1} with R upper triangular.
Matrix solve_right_triangular(const Matrix& m, const Matrix& r) {
  return r.transpose()
      .triangularView<Eigen::Lower>()
      .solve(m.transpose())
      .transpose();
}

}  // namespace

LinearCurve::LinearCurve(Matrix e_, Matrix d_) : e(std::move(e_)), d(std::move(d_)) {
  if (e.rows() != d.rows() || e.cols() != d.cols())
    throw DimensionMismatch("LinearCurve: E and D shapes differ");
  if (e.rows() <= e.cols() || e.cols() < 1)
    throw DimensionMismatch("LinearCurve: need ambient > dim >= 1");
  Eigen::JacobiSVD<Matrix> svd(e);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0 || sv(sv.size() - 1) <= tol::rank_tol * sv(0))
    throw RankDeficient(sv(sv.size() - 1), sv(0));
}

GrassmannPoint point_at(const LinearCurve& c, double t) {
  return GrassmannPoint{factor_at(c, t).q};
}

SpeedSample speed_at(const LinearCurve& c, double t) {
  auto [q, r] = factor_at(c, t);
  const Matrix dtil = solve_right_triangular(c.d, r);
  Matrix delta = dtil - q * (q.transpose() * dtil);
  const double speed = delta.norm();
  GrassmannPoint point{std::move(q)};
  return SpeedSample{point, GrassTangent{point, std::move(delta)}, speed};
}

// ---------------------------------------------------------------------------
// Arc length: integrate the speed in the compactified coordinate th = atan t.
// Panels are pre-split at decade breakpoints |t| = 10^k so that narrow speed
// bumps (rescaled curves move their activity to t ~ 1/lambda) are never missed
// by the error estimator, then Gauss(7)/Kronrod(15) adapts within each panel.
// ---------------------------------------------------------------------------
namespace {

// 15-point Kronrod nodes/weights on [-1,1] with the embedded 7-point Gauss rule.
const double kGkNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
const double kKronrodW[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
const double kGaussW[7] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469,
                           0.381830050505119, 0.279705391489277,
                           0.129484966168870};

template <class F>
void gk15(const F& f, double a, double b, double& value, double& err) {
  const double mid = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  double k15 = 0.0, g7 = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double y = f(mid + hw * kGkNodes[i]);
    k15 += kKronrodW[i] * y;
    if (i % 2 == 1) g7 += kGaussW[i / 2] * y;
  }
  value = k15 * hw;
  err = std::abs((k15 - g7) * hw);
}

template <class F>
double adaptive_gk(const F& f, double a, double b, double tol, int depth) {
  double value, err;
  gk15(f, a, b, value, err);
  // Second condition: the estimate has reached the roundoff floor of the
  // panel value; further splitting only chases noise.
  if (err <= tol || err <= 1e-15 * std::abs(value) || depth >= 40)
    return value;
  const double mid = 0.5 * (a + b);
  return adaptive_gk(f, a, mid, 0.5 * tol, depth + 1) +
         adaptive_gk(f, mid, b, 0.5 * tol, depth + 1);
}

double speed_compactified(const LinearCurve& c, double th) {
  const double t = std::tan(th);
  const double jac = 1.0 + t * t;  // d(tan th)/d th
  return speed_at(c, t).speed * jac;
}

}  // namespace

double length(const LinearCurve& c, double t0, double t1, double abs_tol) {
  if (std::isnan(t0) || std::isnan(t1) || !(t0 <= t1))
    throw InvalidArgument("length: need t0 <= t1");
  if (t0 == t1) return 0.0;

  const double th0 = std::atan(t0);
  const double th1 = std::atan(t1);

  std::vector<double> cuts{th0};
  for (int k = -9; k <= 9; ++k) {
    const double mag = std::atan(std::pow(10.0, k));
    for (double cut : {-mag, mag})
      if (cut > th0 && cut < th1) cuts.push_back(cut);
  }
  if (0.0 > th0 && 0.0 < th1) cuts.push_back(0.0);
  cuts.push_back(th1);
  std::sort(cuts.begin(), cuts.end());

  const auto f = [&c](double th) { return speed_compactified(c, th); };
  const double share = abs_tol / static_cast<double>(cuts.size() - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] <= 0.0) continue;
    sum += adaptive_gk(f, cuts[i], cuts[i + 1], share, 0);
  }
  return sum;
}

double total_length(const LinearCurve& c, double abs_tol) {
  return length(c, -kInf, kInf, abs_tol);
}

PolyCoeffs det_polynomial(const LinearCurve& c) {
  const Eigen::Index p = c.dim();
  const double defect =
      (c.e.transpose() * c.e - Matrix::Identity(p, p)).norm();
  if (defect > tol::span_eq_tol)
    throw NotOrthonormal("det_polynomial: E must be orthonormal; recenter first");

  // Faddeev-LeVerrier on M = E^T D gives det(xI - M) = sum c_k x^{p-k};
  // then det(I + tM) = sum (-1)^k c_k t^k.
  const Matrix m = c.e.transpose() * c.d;
  PolyCoeffs coeffs(p + 1);
  coeffs(0) = 1.0;
  Matrix bk = m;
  double ck = -bk.trace();
  coeffs(1) = -ck;
  for (Eigen::Index k = 2; k <= p; ++k) {
    bk = m * (bk + ck * Matrix::Identity(p, p));
    ck = -bk.trace() / static_cast<double>(k);
    coeffs(k) = (k % 2 == 0) ? ck : -ck;
  }
  return coeffs;
}

LinearCurve recenter(const LinearCurve& c, double s) {
  auto [q, r] = factor_at(c, s);
  return LinearCurve(std::move(q), solve_right_triangular(c.d, r));
}

PartitionReport partition(const LinearCurve& c, double root_tol) {
  const LinearCurve centered = recenter(c, 0.0);
  PolyCoeffs poly = det_polynomial(centered);
  std::vector<double> roots = real_roots(poly, root_tol);

  std::vector<Interval> intervals;
  double lo = -kInf;
  for (double r : roots) {
    intervals.push_back({lo, r});
    lo = r;
  }
  intervals.push_back({lo, kInf});
  return PartitionReport{std::move(roots), std::move(intervals),
                         std::move(poly)};
}

namespace {

// Largest monotonicity violation of phi_s along one direction, sampled on a
// uniform grid in the compactified coordinate between s and the interval end.
double direction_violation(const LinearCurve& c, const GrassmannPoint& base,
                           double s, double endpoint, int grid) {
  const double th_s = std::atan(s);
  double th_end = std::atan(endpoint);
  if (std::isfinite(endpoint)) {
    th_end -= 1e-9 * (th_end - th_s);  // stay strictly inside the interval
  }
  double worst = 0.0;
  double prev_phi = 0.0;  // phi_s(0) = 0
  for (int j = 1; j <= grid; ++j) {
    const double th = th_s + (th_end - th_s) * j / grid;
    const double phi = angle_metric(base, point_at(c, std::tan(th)));
    worst = std::max(worst, prev_phi - phi);
    prev_phi = phi;
  }
  return worst;
}

MonotonicityVerdict check_interval(const LinearCurve& c,
                                   const Interval& interval, double s,
                                   int grid) {
  const GrassmannPoint base = point_at(c, s);
  double worst = 0.0;
  if (interval.upper > s)
    worst = std::max(worst,
                     direction_violation(c, base, s, interval.upper, grid));
  if (interval.lower < s)
    worst = std::max(worst,
                     direction_violation(c, base, s, interval.lower, grid));
  return MonotonicityVerdict{interval, s, worst, worst <= tol::mono_tol};
}

const Interval* find_interval(const PartitionReport& part, double s) {
  for (const Interval& iv : part.intervals) {
    if (s > iv.lower + tol::root_merge_tol &&
        s < iv.upper - tol::root_merge_tol)
      return &iv;
  }
  return nullptr;
}

// Interior probe parameter for an interval, in the compactified coordinate so
// unbounded intervals get a sensible midpoint.
double interval_probe(const Interval& iv) {
  const double lo = std::atan(iv.lower);
  const double hi = std::atan(iv.upper);
  return std::tan(0.5 * (lo + hi));
}

}  // namespace

namespace {

// Verdict for the base point s inside the given partition interval. The
// monotone region around s is where every vector of V(s) keeps a positive
// inner product with its own transport, i.e. where I + tau * sym(E_s^T D_s)
// stays positive definite for the curve rebased at s. Its boundary moments
// are tau = -1/lambda over the eigenvalues of the symmetric part. (The
// determinant polynomial can be rootless while a single vector still turns
// orthogonal: its roots need a full kernel, not a quadratic-form zero.)
// Sampling runs inside the intersection with the partition interval.
MonotonicityVerdict monotone_verdict(const LinearCurve& c, const Interval& iv,
                                     double s, int grid) {
  const LinearCurve rebased = recenter(c, s);
  const Matrix g = rebased.e.transpose() * rebased.d;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (g + g.transpose()));
  Interval clipped = iv;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    const double lambda = eig.eigenvalues()(i);
    if (std::abs(lambda) <= 1e-13) continue;
    const double off = -1.0 / lambda;
    if (off < 0.0)
      clipped.lower = std::max(clipped.lower, s + off);
    else
      clipped.upper = std::min(clipped.upper, s + off);
  }
  return check_interval(c, clipped, s, grid);
}

}  // namespace

MonotonicityVerdict check_angle_monotone(const LinearCurve& c, double s,
                                         int grid) {
  if (grid < 2) throw InvalidArgument("check_angle_monotone: grid >= 2");
  const PartitionReport part = partition(c);
  const Interval* iv = find_interval(part, s);
  if (iv == nullptr)
    throw InvalidArgument(
        "check_angle_monotone: s must lie in the interior of a partition "
        "interval");
  return monotone_verdict(c, *iv, s, grid);
}

// ---------------------------------------------------------------------------
// Curvature: compare the curve with the geodesic sharing its initial point and
// velocity. The deviation is the distance from the probed curve point to the
// geodesic as a curve (minimized over the geodesic parameter); the tangential
// drift of the parametrization cancels, so pre-geodesics measure zero.
// ---------------------------------------------------------------------------
namespace {

double distance_to_geodesic(const GrassmannPoint& pt, const Geodesic& geo,
                            double lo, double hi) {
  // Golden-section: the deviation is smooth and unimodal on [lo, hi].
  constexpr double kGolden = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = geodesic_distance(pt, geo.at(x1));
  double f2 = geodesic_distance(pt, geo.at(x2));
  for (int it = 0; it < 90 && (b - a) > 1e-14 * (std::abs(hi) + 1.0); ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = geodesic_distance(pt, geo.at(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = geodesic_distance(pt, geo.at(x2));
    }
  }
  return std::min(f1, f2);
}

}  // namespace

double curvature_at(const LinearCurve& c, double t, double step) {
  const SpeedSample s = speed_at(c, t);
  if (s.speed <= tol::speed_floor) throw ZeroSpeed(t);

  const GrassTangent unit{s.point, s.tangent.delta / s.speed};
  const Geodesic geo(unit);

  // One deviation probe at arc step ha; 2 * dist / ha^2 tends to the
  // curvature as ha -> 0.
  const auto probe = [&](double ha) {
    const double dt = ha / s.speed;
    const GrassmannPoint moved = point_at(c, t + dt);
    const double dev = distance_to_geodesic(moved, geo, 0.0, 2.0 * ha);
    return 2.0 * dev / (ha * ha);
  };

  const double q1 = probe(step);
  const double q2 = probe(0.5 * step);
  return 2.0 * q2 - q1;  // first-order Richardson
}

CurveReport analyze(const LinearCurve& c, const AnalyzeOptions& opt) {
  CurveReport rep{};
  rep.partition = partition(c);
  rep.total_length = total_length(c, opt.length_tol);

  rep.max_speed = 0.0;
  double max_curv = 0.0;
  bool have_curv = false;
  for (int i = 1; i < opt.speed_samples; ++i) {
    const double th = -kHalfPi + (2.0 * kHalfPi) * i / opt.speed_samples;
    const double t = std::tan(th);
    const SpeedSample samp = speed_at(c, t);
    rep.max_speed = std::max(rep.max_speed, samp.speed);
    if (samp.speed > tol::speed_floor) {
      max_curv = std::max(max_curv,
                          std::abs(curvature_at(c, t, opt.curvature_step)));
      have_curv = true;
    }
  }
  if (have_curv) rep.max_curvature = max_curv;

  for (const Interval& iv : rep.partition.intervals) {
    if (std::isfinite(iv.lower) && std::isfinite(iv.upper) &&
        iv.upper - iv.lower <= tol::root_merge_tol)
      continue;  // below root-finding resolution
    rep.monotonicity.push_back(
        monotone_verdict(c, iv, interval_probe(iv), opt.mono_grid));
  }
  return rep;
}

}  // namespace grassflow
