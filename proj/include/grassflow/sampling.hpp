#pragma once

#include "grassflow/grassmann.hpp"
#include "grassflow/linear_curve.hpp"
#include "grassflow/rng.hpp"

namespace grassflow {

/// Orthonormal basis of a random p-dimensional subspace of R^n (Gaussian + QR).
Matrix random_orthonormal(Rng& rng, Eigen::Index n, Eigen::Index p);

GrassmannPoint random_point(Rng& rng, Eigen::Index n, Eigen::Index p);

/// Horizontal Gaussian tangent at v, optionally normalized to unit Frobenius.
GrassTangent random_tangent(Rng& rng, const GrassmannPoint& v,
                            bool unit = false);

/// Random curve with orthonormal E and Gaussian D.
LinearCurve random_curve(Rng& rng, Eigen::Index p, Eigen::Index q);

}  // namespace grassflow
