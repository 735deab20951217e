#pragma once

#include <Eigen/Dense>
#include <vector>

#include "grassflow/errors.hpp"
#include "grassflow/tolerances.hpp"

namespace grassflow {

using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

// Real polynomial coefficients c_0..c_d in ascending degree. The leading
// coefficient may be zero: the size is only an upper bound on the degree.
using PolyCoeffs = Eigen::VectorXd;

struct QrThin {
  Matrix q;  // orthonormal columns
  Matrix r;  // upper triangular, positive diagonal
};

/// Thin QR of a full-column-rank matrix (rows >= cols). Throws RankDeficient
/// when sigma_min <= rank_tol * sigma_max.
QrThin qr_thin(const Matrix& m, double rank_tol = tol::rank_tol);

struct PolarLeft {
  Matrix b;  // symmetric positive semidefinite
  Matrix u;  // orthogonal
};

/// Left polar decomposition M = B*U of a square matrix. Total: for singular M
/// the orthogonal factor is completed from the SVD bases.
PolarLeft polar_left(const Matrix& m);

/// exp(S) for skew-symmetric S. Throws NotSkew when ||S+S^T|| > 1e-12 ||S||.
Matrix skew_exp(const Matrix& s);

/// All real roots of p, multiplicity collapsed, ascending. Companion-matrix
/// eigenvalues with Newton polish; roots closer than root_merge_tol coalesce.
std::vector<double> real_roots(const PolyCoeffs& p,
                               double root_tol = tol::root_tol);

/// The 2n x 2m real matrix of an n x m complex one: each entry a+bi becomes
/// the block [[a,-b],[b,a]].
Matrix realify(const ComplexMatrix& a);

double poly_eval(const PolyCoeffs& p, double t);

}  // namespace grassflow
