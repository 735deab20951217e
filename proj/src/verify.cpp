#include "grassflow/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "grassflow/atomicity.hpp"
#include "grassflow/flow.hpp"
#include "grassflow/io.hpp"
#include "grassflow/linear_curve.hpp"
#include "grassflow/sampling.hpp"

namespace grassflow {

namespace {

constexpr double kHalfPi = 1.5707963267948966;
constexpr double kTwoPi = 6.283185307179586476925286766559;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// 1. Closed-form speed at t=0 vs a Richardson finite-difference quotient of
// the geodesic distance. The quotient is symmetric in t (the tangential
// reparametrization drift of a one-sided quotient is O(h^2) and would swamp
// the target accuracy), extrapolated over h and h/2.
CheckResult check_speed_identity(const Rng& root, int max_dim) {
  Rng rng = root.stream(1);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Rng r = rng.stream(i);
    const int p = r.uniform_int(1, max_dim);
    const int q = r.uniform_int(1, max_dim);
    const LinearCurve c = random_curve(r, p, q);
    const double closed = speed_at(c, 0.0).speed;
    const auto quot = [&](double h) {
      return geodesic_distance(point_at(c, -h), point_at(c, h)) / (2.0 * h);
    };
    const double h = 1e-3;
    const double fd = (4.0 * quot(0.5 * h) - quot(h)) / 3.0;
    worst = std::max(worst, std::abs(closed - fd) / closed);
  }
  return {1,    "speed-identity",
          worst <= 1e-6, worst,
          1e-6, "max relative |closed - finite difference| over 1000 curves",
          0.0};
}

// 2. The two geodesic constructions agree.
CheckResult check_geodesic_agreement(const Rng& root) {
  Rng rng = root.stream(2);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Rng r = rng.stream(i);
    const int p = r.uniform_int(1, 11);
    const int q = r.uniform_int(1, 12 - p);
    const GrassmannPoint v = random_point(r, p + q, p);
    const GrassTangent delta = random_tangent(r, v, /*unit=*/true);
    const double t = r.uniform(0.0, 2.0);
    const double gap = geodesic_distance(geodesic_closed_form(v, delta, t),
                                         geodesic_via_exp(v, delta, t));
    worst = std::max(worst, gap);
  }
  return {2,     "geodesic-cross-construction",
          worst <= 1e-10, worst,
          1e-10, "max distance between constructions over 1000 samples",
          0.0};
}

// 3. Real 1x1 flows have length pi/2 whatever the scalar.
CheckResult check_scalar_flow() {
  double worst = 0.0;
  for (double a : {1e-3, 1.0, 1e3}) {
    Matrix m(1, 1);
    m(0, 0) = a;
    const double len = flow_length(BundleMapSample::from_real(m));
    worst = std::max(worst, std::abs(len - kHalfPi));
  }
  return {3,    "scalar-flow-length",
          worst <= 1e-6, worst,
          1e-6, "max |length - pi/2| over a in {1e-3, 1, 1e3}",
          0.0};
}

// 4. flow_length(lambda A) = flow_length(A).
CheckResult check_scale_invariance(const Rng& root) {
  Rng rng = root.stream(4);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Rng r = rng.stream(i);
    const int m = r.uniform_int(1, 3);
    const int n = r.uniform_int(1, 3);
    const BundleMapSample s =
        BundleMapSample::from_complex(r.gaussian_complex(n, m));
    const double base = flow_length(s);
    for (double lambda : {1e-6, 1e-2, 1.0, 1e2, 1e6}) {
      const double len = flow_length(s.scaled(lambda));
      worst = std::max(worst, std::abs(len - base) / base);
    }
  }
  return {4,    "flow-scale-invariance",
          worst <= 1e-7, worst,
          1e-7, "max relative change over 100 maps x lambda in 1e-6..1e6",
          0.0};
}

// 5. The empirical sup of flow lengths stabilizes as the ensemble doubles.
CheckResult check_sup_stability(const Rng& root) {
  Rng rng = root.stream(5);
  double max_half = 0.0, max_full = 0.0;
  for (int i = 0; i < 10000; ++i) {
    Rng r = rng.stream(i);
    const double len =
        flow_length(BundleMapSample::from_complex(r.gaussian_complex(2, 2)));
    if (i < 5000) max_half = std::max(max_half, len);
    max_full = std::max(max_full, len);
  }
  const double change = (max_full - max_half) / max_half;
  return {5,    "uniform-bound-stability",
          change <= 0.02, change,
          0.02, "relative sup change, N=5000 -> N=10000 at (m,n)=(2,2)",
          0.0};
}

// 6. Partition size, root residuals, in-interval monotonicity; plus the
// constructed counterexample that samples across a root and must violate.
CheckResult check_partition_monotonicity(const Rng& root) {
  Rng rng = root.stream(6);
  double max_resid = 0.0;
  double max_viol = 0.0;
  bool count_ok = true;
  for (int i = 0; i < 500; ++i) {
    Rng r = rng.stream(i);
    const int p = r.uniform_int(1, 3);
    const int q = r.uniform_int(1, 3);
    const LinearCurve c = random_curve(r, p, q);
    const PartitionReport part = partition(c);
    if (static_cast<int>(part.roots.size()) > p) count_ok = false;
    for (double rt : part.roots)
      max_resid = std::max(max_resid, std::abs(poly_eval(part.poly, rt)));
    for (const Interval& iv : part.intervals) {
      if (std::isfinite(iv.lower) && std::isfinite(iv.upper) &&
          iv.upper - iv.lower <= tol::root_merge_tol)
        continue;
      const double lo = std::atan(iv.lower), hi = std::atan(iv.upper);
      const double probe = std::tan(0.5 * (lo + hi));
      max_viol =
          std::max(max_viol, check_angle_monotone(c, probe, 200).max_violation);
    }
  }

  // p=1 curve with e=(1,0), d=(2,1): P(t)=1+2t, root at -0.5. Sampling phi_s
  // from s=-1 across the root must show the angle coming back down.
  Matrix e(2, 1), d(2, 1);
  e << 1.0, 0.0;
  d << 2.0, 1.0;
  const LinearCurve counter(e, d);
  const GrassmannPoint base = point_at(counter, -1.0);
  double counter_viol = 0.0;
  double prev = 0.0;
  for (int j = 1; j <= 200; ++j) {
    const double t = -1.0 + 0.9 * j / 200;  // crosses -0.5
    const double phi = angle_metric(base, point_at(counter, t));
    counter_viol = std::max(counter_viol, prev - phi);
    prev = phi;
  }

  const bool pass = count_ok && max_resid <= 1e-6 &&
                    max_viol <= tol::mono_tol && counter_viol > tol::mono_tol;
  return {6,
          "partition-monotonicity",
          pass,
          max_viol,
          tol::mono_tol,
          "max in-interval violation; root residual max " +
              std::to_string(max_resid) + "; cross-root violation " +
              std::to_string(counter_viol),
          0.0};
}

// 7. Curvature estimates at probe steps h and h/2 agree (limit exists), and
// one-dimensional targets measure zero curvature. Pairs where both estimates
// sit below 1e-4 count as agreeing: those curves are exact pre-geodesics
// (every 1x1 complex map yields one) and the quotient is pure noise there.
CheckResult check_curvature_limit(const Rng& root) {
  Rng rng = root.stream(7);
  double worst = 0.0;
  const double h = 1e-3;
  for (int i = 0; i < 200; ++i) {
    Rng r = rng.stream(i);
    const int m = r.uniform_int(1, 3);
    const int n = r.uniform_int(1, 3);
    const LinearCurve c =
        trajectory(BundleMapSample::from_complex(r.gaussian_complex(n, m)))
            .curve;
    for (int k = 0; k < 10; ++k) {
      const double t = r.uniform(0.05, 2.5);
      const double k1 = curvature_at(c, t, h);
      const double k2 = curvature_at(c, t, 0.5 * h);
      const double scale = std::max(std::abs(k1), std::abs(k2));
      if (scale <= 1e-4) continue;
      worst = std::max(worst, std::abs(k1 - k2) / scale);
    }
  }

  Rng rflat = root.stream(71);
  double flat_worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    Matrix a(1, 1);
    a(0, 0) = std::exp(rflat.uniform(-3.0, 3.0));
    const LinearCurve c = trajectory(BundleMapSample::from_real(a)).curve;
    const double t = rflat.uniform(0.05, 2.5);
    flat_worst = std::max(flat_worst, std::abs(curvature_at(c, t, h)));
  }

  const bool pass = worst <= 0.01 && flat_worst <= 1e-4;
  return {7,
          "curvature-limit-existence",
          pass,
          worst,
          0.01,
          "max relative step disagreement; p=q=1 max curvature " +
              std::to_string(flat_worst),
          0.0};
}

// 8. Desk-scale atomicity: a circle family vanishing at two points has finite
// sup fiber length, a grid-refinement-stable Fubini estimate, and fiber
// lengths invariant under pointwise positive rescaling.
CheckResult check_atomicity(const Rng& root) {
  Rng rng = root.stream(8);
  const ComplexMatrix a0 = rng.gaussian_complex(2, 2);

  const auto family_at = [&](int cells) {
    return build_family(BaseGrid({cells}), [&](const GridPoint& gp) {
      return BundleMapSample::from_complex(std::sin(kTwoPi * gp.x[0]) * a0);
    });
  };

  const MapFamily coarse = family_at(32);
  const MapFamily fine = family_at(64);
  const AtomicityReport rep_c = atomicity_report(coarse);
  const AtomicityReport rep_f = atomicity_report(fine);

  const bool finite = std::isfinite(rep_c.sup_length) && rep_c.sup_length > 0;
  const double refine_change =
      std::abs(rep_f.measure_estimate - rep_c.measure_estimate) /
      rep_c.measure_estimate;

  const MapFamily rescaled =
      build_family(coarse.grid, [&](const GridPoint& gp) {
        const double g = 1.5 + std::cos(kTwoPi * gp.x[0]);
        return coarse.samples[gp.flat].scaled(g);
      });
  const AtomicityReport rep_r = atomicity_report(rescaled);
  double rescale_diff = 0.0;
  for (std::size_t i = 0; i < rep_c.lengths.size(); ++i)
    rescale_diff = std::max(
        rescale_diff, std::abs(rep_r.lengths[i] - rep_c.lengths[i]) /
                          rep_c.lengths[i]);

  const bool pass = finite && refine_change <= 0.02 && rescale_diff <= 1e-7;
  return {8,
          "atomicity-desk-scale",
          pass,
          refine_change,
          0.02,
          "Fubini estimate change 32->64 cells; rescale max diff " +
              std::to_string(rescale_diff) + "; sup " +
              std::to_string(rep_c.sup_length),
          0.0};
}

// 9. Metric axioms for both metrics on random triples.
CheckResult check_metric_axioms(const Rng& root) {
  Rng rng = root.stream(9);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Rng r = rng.stream(i);
    const int p = r.uniform_int(1, 6);
    const int q = r.uniform_int(1, 12 - p > 6 ? 6 : 12 - p);
    const GrassmannPoint v = random_point(r, p + q, p);
    const GrassmannPoint u = random_point(r, p + q, p);
    const GrassmannPoint w = random_point(r, p + q, p);
    for (auto metric : {&geodesic_distance, &angle_metric}) {
      const double sym = std::abs(metric(v, w) - metric(w, v));
      const double ident = metric(v, v);
      const double tri = metric(v, w) - metric(v, u) - metric(u, w);
      worst = std::max({worst, sym, ident, tri});
    }
  }
  return {9,     "metric-axioms",
          worst <= 1e-10, worst,
          1e-10, "max axiom violation over 1000 triples, both metrics",
          0.0};
}

}  // namespace

VerifySummary run_verify(const VerifyOptions& opt) {
  const Rng root(opt.seed);
  VerifySummary summary{opt.seed, opt.max_dim, true, {}};

  const auto run = [&](auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult res = fn();
    res.runtime_seconds = seconds_since(t0);
    summary.all_pass = summary.all_pass && res.pass;
    summary.checks.push_back(std::move(res));
  };

  run([&] { return check_speed_identity(root, opt.max_dim); });
  run([&] { return check_geodesic_agreement(root); });
  run([&] { return check_scalar_flow(); });
  run([&] { return check_scale_invariance(root); });
  run([&] { return check_sup_stability(root); });
  run([&] { return check_partition_monotonicity(root); });
  run([&] { return check_curvature_limit(root); });
  run([&] { return check_atomicity(root); });
  run([&] { return check_metric_axioms(root); });
  return summary;
}

std::string summary_json(const VerifySummary& s) {
  return io::verify_json(s).dump(2) + "\n";
}

}  // namespace grassflow
