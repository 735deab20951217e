#include "grassflow/matrix_kernel.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace grassflow {

QrThin qr_thin(const Matrix& m, double rank_tol) {
  if (m.rows() < m.cols())
    throw DimensionMismatch("qr_thin: need rows >= cols");
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (smax == 0.0 || smin <= rank_tol * smax) throw RankDeficient(smin, smax);

  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
  Matrix r = qr.matrixQR()
                 .topRows(m.cols())
                 .triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < r.rows(); ++j) {
    if (r(j, j) < 0.0) {
      r.row(j) = -r.row(j);
      q.col(j) = -q.col(j);
    }
  }
  return {std::move(q), std::move(r)};
}

PolarLeft polar_left(const Matrix& m) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("polar_left: square input required");
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix b = svd.matrixU() * svd.singularValues().asDiagonal() *
             svd.matrixU().transpose();
  Matrix u = svd.matrixU() * svd.matrixV().transpose();
  return {std::move(b), std::move(u)};
}

Matrix skew_exp(const Matrix& s) {
  if (s.rows() != s.cols())
    throw DimensionMismatch("skew_exp: square input required");
  const double scale = s.norm();
  const double defect = (s + s.transpose()).norm();
  if (defect > 1e-12 * scale) throw NotSkew(scale > 0 ? defect / scale : defect);
  return s.exp();
}

double poly_eval(const PolyCoeffs& p, double t) {
  double acc = 0.0;
  for (Eigen::Index k = p.size() - 1; k >= 0; --k) acc = acc * t + p(k);
  return acc;
}

namespace {

double poly_derivative_eval(const PolyCoeffs& p, double t) {
  double acc = 0.0;
  for (Eigen::Index k = p.size() - 1; k >= 1; --k)
    acc = acc * t + p(k) * static_cast<double>(k);
  return acc;
}

// A couple of guarded Newton steps to tighten a companion-matrix root.
double polish_root(const PolyCoeffs& p, double t) {
  for (int it = 0; it < 3; ++it) {
    const double f = poly_eval(p, t);
    const double df = poly_derivative_eval(p, t);
    if (df == 0.0) break;
    const double step = f / df;
    const double cand = t - step;
    if (!std::isfinite(cand)) break;
    if (std::abs(poly_eval(p, cand)) >= std::abs(f)) break;
    t = cand;
  }
  return t;
}

}  // namespace

std::vector<double> real_roots(const PolyCoeffs& p, double root_tol) {
  if (p.size() == 0) throw ZeroPolynomial();
  const double cmax = p.cwiseAbs().maxCoeff();
  if (cmax == 0.0) throw ZeroPolynomial();

  Eigen::Index d = p.size() - 1;
  while (d > 0 && std::abs(p(d)) <= 1e-14 * cmax) --d;
  if (d == 0) return {};

  Matrix comp = Matrix::Zero(d, d);
  comp.diagonal(-1).setOnes();
  for (Eigen::Index i = 0; i < d; ++i) comp(i, d - 1) = -p(i) / p(d);

  Eigen::EigenSolver<Matrix> es(comp, /*computeEigenvectors=*/false);
  std::vector<double> roots;
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto z = es.eigenvalues()(i);
    if (std::abs(z.imag()) <= root_tol * (1.0 + std::abs(z.real())))
      roots.push_back(polish_root(p, z.real()));
  }
  std::sort(roots.begin(), roots.end());

  // Collapse multiplicities: only partition locations matter downstream.
  std::vector<double> merged;
  for (double r : roots) {
    if (!merged.empty() && r - merged.back() <= tol::root_merge_tol)
      merged.back() = 0.5 * (merged.back() + r);
    else
      merged.push_back(r);
  }
  return merged;
}

Matrix realify(const ComplexMatrix& a) {
  Matrix r(2 * a.rows(), 2 * a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double re = a(i, j).real();
      const double im = a(i, j).imag();
      r(2 * i, 2 * j) = re;
      r(2 * i, 2 * j + 1) = -im;
      r(2 * i + 1, 2 * j) = im;
      r(2 * i + 1, 2 * j + 1) = re;
    }
  }
  return r;
}

}  // namespace grassflow
