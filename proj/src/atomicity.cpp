#include "grassflow/atomicity.hpp"

#include <algorithm>
#include <cmath>

namespace grassflow {

BaseGrid::BaseGrid(std::vector<int> shape_) : shape(std::move(shape_)) {
  if (shape.empty()) throw InvalidArgument("grid needs at least one axis");
  for (int n : shape)
    if (n < 2) throw InvalidArgument("grid sizes must be >= 2");
}

long BaseGrid::total_cells() const {
  long n = 1;
  for (int s : shape) n *= s;
  return n;
}

double BaseGrid::cell_volume() const {
  double v = 1.0;
  for (int s : shape) v /= s;
  return v;
}

std::vector<int> BaseGrid::multi_index(long flat) const {
  std::vector<int> idx(shape.size());
  for (int k = nu() - 1; k >= 0; --k) {
    idx[k] = static_cast<int>(flat % shape[k]);
    flat /= shape[k];
  }
  return idx;
}

std::vector<double> BaseGrid::center(long flat) const {
  const std::vector<int> idx = multi_index(flat);
  std::vector<double> x(shape.size());
  for (int k = 0; k < nu(); ++k) x[k] = (idx[k] + 0.5) / shape[k];
  return x;
}

MapFamily build_family(
    const BaseGrid& grid,
    const std::function<BundleMapSample(const GridPoint&)>& generator) {
  MapFamily family{grid, {}};
  const long n = grid.total_cells();
  family.samples.reserve(n);
  for (long flat = 0; flat < n; ++flat) {
    GridPoint gp{flat, grid.multi_index(flat), grid.center(flat)};
    family.samples.push_back(generator(gp));
  }
  for (const BundleMapSample& s : family.samples) {
    if (s.p() != family.samples.front().p() ||
        s.q() != family.samples.front().q() ||
        s.real_mode != family.samples.front().real_mode)
      throw InconsistentFibers("family samples have differing fiber dimensions");
  }
  return family;
}

AtomicityReport atomicity_report(const MapFamily& f, double abs_tol) {
  AtomicityReport rep{};
  const long n = static_cast<long>(f.samples.size());
  rep.lengths.reserve(n);

  double norm_sum = 0.0;
  for (const BundleMapSample& s : f.samples) norm_sum += s.a_real.norm();
  const double zero_tol = 1e-12 * (n > 0 ? norm_sum / n : 0.0);

  rep.sup_length = 0.0;
  rep.zero_locus_cells = 0;
  double length_sum = 0.0;
  for (const BundleMapSample& s : f.samples) {
    if (s.a_real.norm() <= zero_tol) {
      // Constant trajectory: this cell lies on the zero stratum.
      ++rep.zero_locus_cells;
      rep.lengths.push_back(0.0);
      continue;
    }
    const double len = flow_length(s, abs_tol);
    rep.lengths.push_back(len);
    rep.sup_length = std::max(rep.sup_length, len);
    length_sum += len;
  }
  rep.mean_length = n > 0 ? length_sum / n : 0.0;
  rep.measure_estimate = length_sum * f.grid.cell_volume();
  return rep;
}

}  // namespace grassflow
