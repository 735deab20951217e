#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "grassflow/matrix_kernel.hpp"
#include "grassflow/rng.hpp"

using namespace grassflow;

TEST_CASE("qr_thin: identity factors as (I, I)") {
  const Matrix i3 = Matrix::Identity(3, 3);
  auto [q, r] = qr_thin(i3);
  CHECK((q - i3).norm() < 1e-14);
  CHECK((r - i3).norm() < 1e-14);
}

TEST_CASE("qr_thin: single column (3,4) normalizes to (0.6, 0.8) with R=(5)") {
  Matrix m(2, 1);
  m << 3.0, 4.0;
  auto [q, r] = qr_thin(m);
  CHECK(q(0, 0) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(q(1, 0) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(r(0, 0) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("qr_thin: reconstruction and orthonormality on random input") {
  Rng rng(101);
  for (int it = 0; it < 500; ++it) {
    Rng r = rng.stream(it);
    const int rows = r.uniform_int(2, 12);
    const int cols = r.uniform_int(1, rows);
    const Matrix m = r.gaussian(rows, cols);
    auto qr = qr_thin(m);
    CHECK((qr.q.transpose() * qr.q - Matrix::Identity(cols, cols)).norm() <=
          1e-12);
    CHECK((qr.q * qr.r - m).norm() <= 1e-12 * m.norm());
    for (int j = 0; j < cols; ++j) CHECK(qr.r(j, j) > 0.0);
  }
}

TEST_CASE("qr_thin: rank-deficient input throws with the singular value") {
  Matrix m(3, 2);
  m << 1.0, 2.0, 1.0, 2.0, 1.0, 2.0;  // second column is 2x the first
  CHECK_THROWS_AS(qr_thin(m), RankDeficient);
  try {
    qr_thin(m);
  } catch (const RankDeficient& e) {
    CHECK(e.sigma_min <= tol::rank_tol * e.sigma_max);
  }
}

TEST_CASE("polar_left: identity and pure rotation") {
  const Matrix i2 = Matrix::Identity(2, 2);
  auto [b1, u1] = polar_left(i2);
  CHECK((b1 - i2).norm() < 1e-14);
  CHECK((u1 - i2).norm() < 1e-14);

  Matrix rot(2, 2);
  rot << 0.0, -1.0, 1.0, 0.0;
  auto [b2, u2] = polar_left(rot);
  CHECK((b2 - i2).norm() < 1e-13);
  CHECK((u2 - rot).norm() < 1e-13);
}

TEST_CASE("polar_left: properties on 10^4 random matrices up to size 12") {
  Rng rng(102);
  for (int it = 0; it < 10000; ++it) {
    Rng r = rng.stream(it);
    const int n = r.uniform_int(1, 12);
    Matrix m = r.gaussian(n, n);
    if (it % 7 == 0) m.col(0).setZero();  // exercise the singular branch
    auto [b, u] = polar_left(m);
    CHECK((b * u - m).norm() <= 1e-12 * (1.0 + m.norm()));
    CHECK((b - b.transpose()).norm() <= 1e-12 * (1.0 + b.norm()));
    CHECK((u.transpose() * u - Matrix::Identity(n, n)).norm() <= 1e-12);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (b + b.transpose()));
    CHECK(eig.eigenvalues().minCoeff() >= -1e-12);
  }
}

TEST_CASE("skew_exp: zero matrix and quarter rotation") {
  CHECK((skew_exp(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)).norm() <
        1e-15);

  const double half_pi = 1.5707963267948966;
  Matrix s(2, 2);
  s << 0.0, -half_pi, half_pi, 0.0;
  Matrix expected(2, 2);
  expected << 0.0, -1.0, 1.0, 0.0;
  CHECK((skew_exp(s) - expected).norm() < 1e-14);
}

TEST_CASE("skew_exp: matches the truncated power series") {
  Rng rng(103);
  for (int it = 0; it < 50; ++it) {
    Rng r = rng.stream(it);
    const Matrix g = r.gaussian(6, 6);
    const Matrix s = 0.5 * (g - g.transpose());
    Matrix series = Matrix::Identity(6, 6);
    Matrix term = Matrix::Identity(6, 6);
    for (int k = 1; k <= 30; ++k) {
      term = term * s / static_cast<double>(k);
      series += term;
    }
    const Matrix e = skew_exp(s);
    CHECK((e - series).norm() <= 1e-10);
    CHECK((e * skew_exp(-s) - Matrix::Identity(6, 6)).norm() <= 1e-10);
    CHECK((e.transpose() * e - Matrix::Identity(6, 6)).norm() <= 1e-12);
    CHECK(e.determinant() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("skew_exp: rejects a non-skew matrix") {
  Matrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  CHECK_THROWS_AS(skew_exp(m), NotSkew);
}

TEST_CASE("real_roots: linear and rootless cases") {
  PolyCoeffs linear(2);
  linear << 1.0, 1.0;  // 1 + t
  const auto r1 = real_roots(linear);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0] == doctest::Approx(-1.0).epsilon(1e-12));

  PolyCoeffs quad(3);
  quad << 1.0, 0.0, 1.0;  // 1 + t^2
  CHECK(real_roots(quad).empty());
}

TEST_CASE("real_roots: hand-expanded cubic (t-1)(t-2)(t+3)") {
  // (t-1)(t-2) = t^2 - 3t + 2; times (t+3): t^3 - 7t + 6.
  PolyCoeffs cubic(4);
  cubic << 6.0, -7.0, 0.0, 1.0;
  const auto roots = real_roots(cubic);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == doctest::Approx(-3.0).epsilon(1e-10));
  CHECK(roots[1] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(roots[2] == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("real_roots: zero polynomial throws; leading zeros are trimmed") {
  PolyCoeffs zero = PolyCoeffs::Zero(4);
  CHECK_THROWS_AS(real_roots(zero), ZeroPolynomial);

  PolyCoeffs padded(5);
  padded << -2.0, 1.0, 0.0, 0.0, 0.0;  // t - 2 with zero leading coefficients
  const auto roots = real_roots(padded);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("real_roots: no sign change on a sampled grid is missed") {
  Rng rng(104);
  for (int it = 0; it < 200; ++it) {
    Rng r = rng.stream(it);
    const int deg = r.uniform_int(1, 6);
    // Build from known real roots so sign changes are guaranteed.
    PolyCoeffs p = PolyCoeffs::Zero(deg + 1);
    p(0) = 1.0;
    int used = 0;
    for (int k = 0; k < deg; ++k) {
      const double root = r.uniform(-100.0, 100.0);
      // multiply by (t - root)
      PolyCoeffs next = PolyCoeffs::Zero(deg + 1);
      for (int i = 0; i <= used; ++i) {
        next(i + 1) += p(i);
        next(i) -= root * p(i);
      }
      p = next;
      ++used;
    }
    const auto roots = real_roots(p);
    const int grid = 2000;
    double prev = poly_eval(p, -1e6);
    for (int g = 1; g <= grid; ++g) {
      const double x = -1e6 + 2e6 * g / grid;
      const double val = poly_eval(p, x);
      if (prev != 0.0 && val != 0.0 && ((prev < 0) != (val < 0))) {
        const double lo = -1e6 + 2e6 * (g - 1) / grid;
        bool covered = false;
        for (double rt : roots)
          if (rt >= lo - 1e-6 && rt <= x + 1e-6) covered = true;
        CHECK(covered);
      }
      prev = val;
    }
  }
}

TEST_CASE("realify: scalars 1 and i") {
  ComplexMatrix one(1, 1), imag(1, 1);
  one(0, 0) = {1.0, 0.0};
  imag(0, 0) = {0.0, 1.0};
  CHECK((realify(one) - Matrix::Identity(2, 2)).norm() < 1e-15);
  Matrix rot(2, 2);
  rot << 0.0, -1.0, 1.0, 0.0;
  CHECK((realify(imag) - rot).norm() < 1e-15);
}

TEST_CASE("realify: ring homomorphism and adjoint compatibility") {
  Rng rng(105);
  for (int it = 0; it < 100; ++it) {
    Rng r = rng.stream(it);
    const int n = r.uniform_int(1, 5);
    const int m = r.uniform_int(1, 5);
    const int k = r.uniform_int(1, 5);
    const ComplexMatrix a = r.gaussian_complex(n, m);
    const ComplexMatrix b = r.gaussian_complex(m, k);
    CHECK((realify(a * b) - realify(a) * realify(b)).norm() <= 1e-12);
    CHECK((realify(a.adjoint()) - realify(a).transpose()).norm() <= 1e-14);
  }
}
