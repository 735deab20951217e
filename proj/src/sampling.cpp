#include "grassflow/sampling.hpp"

namespace grassflow {

Matrix random_orthonormal(Rng& rng, Eigen::Index n, Eigen::Index p) {
  for (;;) {
    try {
      return qr_thin(rng.gaussian(n, p)).q;
    } catch (const RankDeficient&) {
      continue;  // measure zero
    }
  }
}

GrassmannPoint random_point(Rng& rng, Eigen::Index n, Eigen::Index p) {
  return GrassmannPoint{random_orthonormal(rng, n, p)};
}

GrassTangent random_tangent(Rng& rng, const GrassmannPoint& v, bool unit) {
  GrassTangent t = GrassTangent::horizontal(
      v, rng.gaussian(v.ambient(), v.dim()));
  if (unit) {
    const double norm = t.delta.norm();
    if (norm > 0.0) t.delta /= norm;
  }
  return t;
}

LinearCurve random_curve(Rng& rng, Eigen::Index p, Eigen::Index q) {
  return LinearCurve(random_orthonormal(rng, p + q, p),
                     rng.gaussian(p + q, p));
}

}  // namespace grassflow
