#pragma once

#include <Eigen/Dense>

#include "grassflow/matrix_kernel.hpp"

namespace grassflow {

/// A p-dimensional subspace of R^(p+q), carried by an orthonormal basis.
/// Two values are equal as points iff their column spans coincide; bases are
/// never compared entrywise (O(p) gauge freedom).
struct GrassmannPoint {
  Matrix basis;  // (p+q) x p, orthonormal columns

  Eigen::Index ambient() const { return basis.rows(); }
  Eigen::Index dim() const { return basis.cols(); }

  /// Wraps an already-orthonormal basis; throws NotOrthonormal beyond
  /// ortho_tol.
  static GrassmannPoint from_orthonormal(Matrix b);

  /// Orthonormalizes the column span of any full-column-rank matrix.
  static GrassmannPoint from_span(const Matrix& m);
};

/// A tangent vector at a point, stored as a horizontal delta matrix:
/// basis^T * delta = 0.
struct GrassTangent {
  GrassmannPoint at;
  Matrix delta;  // (p+q) x p

  double norm() const { return delta.norm(); }

  /// Projects an arbitrary delta onto the horizontal space at `at`.
  static GrassTangent horizontal(GrassmannPoint at, const Matrix& raw);
};

struct PrincipalAngles {
  Eigen::VectorXd angles;  // ascending, each in [0, pi/2]

  double largest() const { return angles.maxCoeff(); }
  double l2() const { return angles.norm(); }
};

/// Canonical angles between two subspaces of equal dimension. Small angles
/// come from the sine route, large ones from the cosine route, so both ends
/// are accurate to machine precision.
PrincipalAngles principal_angles(const GrassmannPoint& v,
                                 const GrassmannPoint& w);

/// Geodesic (arc-length) distance sqrt(sum theta_i^2).
double geodesic_distance(const GrassmannPoint& v, const GrassmannPoint& w);

/// The largest principal angle, in [0, pi/2]. Equals pi/2 exactly when some
/// vector of w is orthogonal to v.
double angle_metric(const GrassmannPoint& v, const GrassmannPoint& w);

bool same_span(const GrassmannPoint& v, const GrassmannPoint& w,
               double tolerance = tol::span_eq_tol);

/// Geodesic through tangent.at with initial velocity tangent.delta, with the
/// SVD of the delta precomputed so repeated evaluation is cheap.
class Geodesic {
 public:
  explicit Geodesic(const GrassTangent& tangent);
  GrassmannPoint at(double t) const;

 private:
  Matrix vw_;             // basis * W
  Matrix u_;              // left singular vectors of delta
  Matrix w_;              // right singular vectors
  Eigen::VectorXd sigma_;
};

/// Point at parameter t of the geodesic through v with initial velocity
/// delta, via the closed form basis*W*cos(S t)*W^T + U*sin(S t)*W^T.
GrassmannPoint geodesic_closed_form(const GrassmannPoint& v,
                                    const GrassTangent& delta, double t);

/// Same geodesic realized upstairs: complete the basis to a frame, exponentiate
/// the skew block matrix of the tangent, push the first p frame vectors down.
GrassmannPoint geodesic_via_exp(const GrassmannPoint& v,
                                const GrassTangent& delta, double t);

}  // namespace grassflow
