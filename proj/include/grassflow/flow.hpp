#pragma once

#include "grassflow/linear_curve.hpp"

namespace grassflow {

/// One fiber map A: the complex n x m matrix together with its 2n x 2m
/// realification, which is what all geometry runs on. A real debug mode
/// accepts a real q x p matrix directly so scalar analytic oracles apply.
struct BundleMapSample {
  ComplexMatrix a;      // n x m; empty in real mode
  Matrix a_real;        // q x p (q=2n, p=2m unless real mode)
  bool real_mode = false;

  Eigen::Index p() const { return a_real.cols(); }
  Eigen::Index q() const { return a_real.rows(); }

  static BundleMapSample from_complex(ComplexMatrix a);
  static BundleMapSample from_real(Matrix a);

  BundleMapSample scaled(double lambda) const;
};

/// The multiplicative-flow trajectory of a map's graph: the linear curve
/// t -> graph(t A) together with its limits at 0 and infinity.
struct FlowTrajectory {
  LinearCurve curve;           // E = [I; 0], D = [0; A]
  GrassmannPoint limit_zero;   // the horizontal subspace R^p x {0}
  GrassmannPoint limit_infty;  // ker(A) x {0}  +  {0} x im(A)
};

FlowTrajectory trajectory(const BundleMapSample& s);

/// Arc length of the trajectory over t in (0, inf). Finite for every map,
/// including rank-deficient ones; invariant under A -> lambda A and under
/// unitary changes of either fiber basis.
double flow_length(const BundleMapSample& s, double abs_tol = tol::length_tol);

/// graph(t A) as a point; at t=1 this is the graph of the map itself.
GrassmannPoint graph_point(const BundleMapSample& s, double t);

}  // namespace grassflow
