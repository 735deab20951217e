#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "grassflow/flow.hpp"
#include "grassflow/rng.hpp"

using namespace grassflow;

namespace {
constexpr double kHalfPi = 1.5707963267948966;

BundleMapSample scalar_real(double a) {
  Matrix m(1, 1);
  m(0, 0) = a;
  return BundleMapSample::from_real(m);
}

// Complex map with prescribed singular values (well separated from zero).
BundleMapSample with_rank(Rng& r, int n, int m, int rank) {
  ComplexMatrix u = r.gaussian_complex(n, rank);
  ComplexMatrix v = r.gaussian_complex(m, rank);
  Eigen::HouseholderQR<ComplexMatrix> qu(u), qv(v);
  ComplexMatrix uo = qu.householderQ() * ComplexMatrix::Identity(n, rank);
  ComplexMatrix vo = qv.householderQ() * ComplexMatrix::Identity(m, rank);
  Eigen::VectorXd sv(rank);
  for (int i = 0; i < rank; ++i) sv(i) = r.uniform(0.5, 2.0);
  return BundleMapSample::from_complex(uo * sv.asDiagonal() *
                                       vo.adjoint());
}
}  // namespace

TEST_CASE("trajectory: the zero map is the constant curve") {
  const BundleMapSample s =
      BundleMapSample::from_complex(ComplexMatrix::Zero(2, 2));
  const FlowTrajectory tr = trajectory(s);
  CHECK(same_span(tr.limit_zero, tr.limit_infty, 1e-12));
  CHECK(same_span(graph_point(s, 0.0), graph_point(s, 7.0), 1e-12));
  CHECK(flow_length(s) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("trajectory: real scalar flows converge monotonically to the limit") {
  const BundleMapSample s = scalar_real(1.3);
  const FlowTrajectory tr = trajectory(s);
  double prev = geodesic_distance(graph_point(s, 0.5), tr.limit_infty);
  for (double t : {1.0, 2.0, 4.0, 16.0, 256.0}) {
    const double d = geodesic_distance(graph_point(s, t), tr.limit_infty);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev <= 1e-2);
}

TEST_CASE("trajectory: large-t probe lands on ker + im for rank-deficient maps") {
  Rng rng(401);
  for (int it = 0; it < 20; ++it) {
    Rng r = rng.stream(it);
    const int n = r.uniform_int(2, 3);
    const int m = r.uniform_int(2, 3);
    const int rank = r.uniform_int(1, std::min(n, m) - 1);
    const BundleMapSample s = with_rank(r, n, m, rank);
    const FlowTrajectory tr = trajectory(s);
    CHECK(angle_metric(point_at(tr.curve, 1e6), tr.limit_infty) <= 1e-5);
  }
}

TEST_CASE("flow_length: real 1x1 debug maps always measure pi/2") {
  for (double a : {1e-3, 0.1, 1.0, 42.0, 1e3}) {
    CHECK(flow_length(scalar_real(a)) ==
          doctest::Approx(kHalfPi).epsilon(1e-6));
    CHECK(flow_length(scalar_real(-a)) ==
          doctest::Approx(kHalfPi).epsilon(1e-6));
  }
}

TEST_CASE("flow_length: scale invariance across twelve decades") {
  Rng rng(402);
  for (int it = 0; it < 10; ++it) {
    Rng r = rng.stream(it);
    const BundleMapSample s =
        BundleMapSample::from_complex(r.gaussian_complex(2, 2));
    const double base = flow_length(s);
    for (double lambda : {1e-6, 1e-2, 1e2, 1e6})
      CHECK(flow_length(s.scaled(lambda)) ==
            doctest::Approx(base).epsilon(1e-7));
  }
}

TEST_CASE("flow_length: unitary changes of fiber bases leave length fixed") {
  Rng rng(403);
  for (int it = 0; it < 10; ++it) {
    Rng r = rng.stream(it);
    const int n = 2, m = 2;
    const ComplexMatrix a = r.gaussian_complex(n, m);
    Eigen::HouseholderQR<ComplexMatrix> qu(r.gaussian_complex(n, n));
    Eigen::HouseholderQR<ComplexMatrix> qw(r.gaussian_complex(m, m));
    const ComplexMatrix u =
        qu.householderQ() * ComplexMatrix::Identity(n, n);
    const ComplexMatrix w =
        qw.householderQ() * ComplexMatrix::Identity(m, m);
    const double base = flow_length(BundleMapSample::from_complex(a));
    const double moved =
        flow_length(BundleMapSample::from_complex(u * a * w));
    CHECK(moved == doctest::Approx(base).epsilon(1e-7));
  }
}

TEST_CASE("flow_length: finite for exactly singular maps") {
  Rng rng(404);
  for (int it = 0; it < 10; ++it) {
    Rng r = rng.stream(it);
    const BundleMapSample s = with_rank(r, 3, 3, r.uniform_int(1, 2));
    const double len = flow_length(s);
    CHECK(std::isfinite(len));
    CHECK(len > 0.0);
  }
}

TEST_CASE("flow_length: empirical sup stabilizes as the ensemble doubles") {
  Rng rng(405);
  double max_half = 0.0, max_full = 0.0;
  const int n_total = 400;  // small-scale version; full size in acceptance
  for (int i = 0; i < n_total; ++i) {
    Rng r = rng.stream(i);
    const double len =
        flow_length(BundleMapSample::from_complex(r.gaussian_complex(2, 2)));
    if (i < n_total / 2) max_half = std::max(max_half, len);
    max_full = std::max(max_full, len);
  }
  CHECK((max_full - max_half) / max_half <= 0.05);
}

TEST_CASE("graph_point: t=0 is the horizontal subspace, t=1 the graph itself") {
  const BundleMapSample s =
      BundleMapSample::from_complex(ComplexMatrix::Identity(1, 1));
  const GrassmannPoint at0 = graph_point(s, 0.0);
  Matrix horiz = Matrix::Zero(4, 2);
  horiz.topRows(2).setIdentity();
  CHECK(same_span(at0, GrassmannPoint{horiz}, 1e-12));

  // Identity graph: span{(e1, f1), (e2, f2)} realified.
  Matrix diag(4, 2);
  diag << 1, 0, 0, 1, 1, 0, 0, 1;
  CHECK(same_span(graph_point(s, 1.0), GrassmannPoint::from_span(diag),
                  1e-12));
}

TEST_CASE("graph_point: members satisfy second block = tA * first block") {
  Rng rng(406);
  for (int it = 0; it < 20; ++it) {
    Rng r = rng.stream(it);
    const BundleMapSample s =
        BundleMapSample::from_complex(r.gaussian_complex(2, 3));
    const double t = r.uniform(0.1, 5.0);
    const Matrix basis = graph_point(s, t).basis;
    const Matrix top = basis.topRows(s.p());
    const Matrix bottom = basis.bottomRows(s.q());
    CHECK((bottom - t * s.a_real * top).norm() <= 1e-10 * (1.0 + t));
  }
}

TEST_CASE("graph_point: distance to the limit decreases past the last root") {
  Rng rng(407);
  const BundleMapSample s =
      BundleMapSample::from_complex(rng.gaussian_complex(2, 2));
  const FlowTrajectory tr = trajectory(s);
  const PartitionReport part = partition(tr.curve);
  double start = 1.0;
  for (double rt : part.roots) start = std::max(start, rt + 0.5);
  double prev = angle_metric(point_at(tr.curve, start), tr.limit_infty);
  for (int k = 1; k <= 12; ++k) {
    const double t = start * std::pow(2.0, k);
    const double d = angle_metric(point_at(tr.curve, t), tr.limit_infty);
    CHECK(d <= prev + 1e-12);
    prev = d;
  }
}
