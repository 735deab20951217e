#pragma once

#include <functional>
#include <vector>

#include "grassflow/flow.hpp"

namespace grassflow {

/// Uniform grid over the unit flat torus [0,1)^nu. Samples sit at cell
/// centers (i + 1/2)/N, so built-in generators with lattice zeros are probed
/// arbitrarily close to (but never exactly at) their zero locus.
struct BaseGrid {
  std::vector<int> shape;  // one size >= 2 per axis

  explicit BaseGrid(std::vector<int> shape_);

  int nu() const { return static_cast<int>(shape.size()); }
  long total_cells() const;
  double cell_volume() const;
  std::vector<int> multi_index(long flat) const;
  std::vector<double> center(long flat) const;
};

struct GridPoint {
  long flat;
  std::vector<int> index;
  std::vector<double> x;  // cell center in [0,1)^nu
};

struct MapFamily {
  BaseGrid grid;
  std::vector<BundleMapSample> samples;  // flat row-major order
};

/// Evaluates the generator at every cell and validates that all samples share
/// fiber dimensions. Throws InconsistentFibers otherwise.
MapFamily build_family(
    const BaseGrid& grid,
    const std::function<BundleMapSample(const GridPoint&)>& generator);

struct AtomicityReport {
  std::vector<double> lengths;  // fiber trajectory length per cell
  double sup_length;
  double mean_length;
  double measure_estimate;  // sum of length * cell volume (Fubini integrand)
  long zero_locus_cells;    // cells where ||A|| < 1e-12 * mean ||A||
};

AtomicityReport atomicity_report(const MapFamily& f,
                                 double abs_tol = tol::length_tol);

}  // namespace grassflow
