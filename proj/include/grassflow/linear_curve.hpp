#pragma once

#include <optional>
#include <vector>

#include "grassflow/grassmann.hpp"

namespace grassflow {

/// The path of subspaces V(t) = colspan(E + tD).
struct LinearCurve {
  Matrix e;  // (p+q) x p, full column rank
  Matrix d;  // (p+q) x p

  LinearCurve(Matrix e_, Matrix d_);

  Eigen::Index ambient() const { return e.rows(); }
  Eigen::Index dim() const { return e.cols(); }
};

struct SpeedSample {
  GrassmannPoint point;
  GrassTangent tangent;
  double speed;  // Frobenius norm of the horizontal tangent
};

/// Open interval of the parameter line; endpoints may be +-infinity.
struct Interval {
  double lower;
  double upper;
};

struct PartitionReport {
  std::vector<double> roots;        // ascending, at most p of them
  std::vector<Interval> intervals;  // the roots.size()+1 open intervals
  PolyCoeffs poly;                  // det(I + t E^T D) of the recentered curve
};

struct MonotonicityVerdict {
  Interval interval;
  double probe;          // the interior base parameter s that was used
  double max_violation;  // largest negative forward step of the angle
  bool ok;
};

struct CurveReport {
  double total_length;
  double max_speed;
  std::optional<double> max_curvature;  // absent when every sample is stationary
  PartitionReport partition;
  std::vector<MonotonicityVerdict> monotonicity;
};

/// Orthonormalized span of E + tD. Throws RankDrop when the basis degenerates.
GrassmannPoint point_at(const LinearCurve& c, double t);

/// Point, horizontal tangent and speed at t. With E + tD = QR (thin), the
/// tangent is (I - QQ^T) D R^{-1}; at t=0 with orthonormal E this is exactly
/// (I - EE^T) D.
SpeedSample speed_at(const LinearCurve& c, double t);

/// Geodesic curvature estimate at t: deviation of the curve from the
/// comparison geodesic with matching initial point and velocity, measured at
/// arc step `step` and Richardson-extrapolated over step and step/2. The
/// deviation is the distance to the geodesic as a curve (minimized over its
/// parameter), so pre-geodesics report zero regardless of parametrization.
double curvature_at(const LinearCurve& c, double t, double step = 1e-3);

/// Arc length over [t0, t1]; endpoints may be +-infinity (integration runs in
/// the compactified coordinate theta = arctan t throughout).
double length(const LinearCurve& c, double t0, double t1,
              double abs_tol = tol::length_tol);

/// Arc length of the full line, -inf < t < inf.
double total_length(const LinearCurve& c, double abs_tol = tol::length_tol);

/// Coefficients of P(t) = det(E^T (E + tD)) = det(I + t E^T D) for orthonormal
/// E, degree <= p, P(0) = 1. Faddeev-LeVerrier, no eigensolve.
PolyCoeffs det_polynomial(const LinearCurve& c);

/// The same subspace path re-based at parameter s: point_at(result, t) equals
/// point_at(c, s + t) with result.e orthonormal.
LinearCurve recenter(const LinearCurve& c, double s);

/// Real roots of the determinant polynomial of the curve recentered at 0, and
/// the open intervals they delimit.
PartitionReport partition(const LinearCurve& c,
                          double root_tol = tol::root_tol);

/// Checks that the angle function phi_s(t) = angle(V(s), V(s+t)) is monotone
/// going from s toward each endpoint of the partition interval containing s,
/// sampled on a `grid`-point grid per direction (uniform in arctan t, so
/// unbounded intervals are covered). s must be interior to its interval.
MonotonicityVerdict check_angle_monotone(const LinearCurve& c, double s,
                                         int grid);

struct AnalyzeOptions {
  double length_tol = tol::length_tol;
  int mono_grid = 200;
  int speed_samples = 100;
  double curvature_step = 1e-3;
};

/// Total length, sampled speed/curvature maxima, partition and per-interval
/// monotonicity verdicts in one report.
CurveReport analyze(const LinearCurve& c, const AnalyzeOptions& opt = {});

}  // namespace grassflow
