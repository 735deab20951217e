#pragma once

#include <stdexcept>
#include <string>

namespace grassflow {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A matrix required to have full column rank does not.
struct RankDeficient : Error {
  double sigma_min;
  double sigma_max;
  RankDeficient(double smin, double smax)
      : Error("rank-deficient matrix: sigma_min=" + std::to_string(smin) +
              " sigma_max=" + std::to_string(smax)),
        sigma_min(smin),
        sigma_max(smax) {}
};

struct NotSkew : Error {
  explicit NotSkew(double defect)
      : Error("matrix is not skew-symmetric (||S+S^T|| = " +
              std::to_string(defect) + " relative)") {}
};

struct ZeroPolynomial : Error {
  ZeroPolynomial() : Error("the zero polynomial has no well-defined roots") {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct TangentMismatch : Error {
  using Error::Error;
};

struct NotOrthonormal : Error {
  using Error::Error;
};

/// The moving basis E + tD degenerates at parameter t; the subspace limit may
/// still exist but this representation cannot produce it.
struct RankDrop : Error {
  double t;
  double sigma_min;
  RankDrop(double t_, double smin)
      : Error("basis degenerates at t=" + std::to_string(t_) +
              " (sigma_min=" + std::to_string(smin) + ")"),
        t(t_),
        sigma_min(smin) {}
};

/// Curvature is undefined where the curve is stationary.
struct ZeroSpeed : Error {
  double t;
  explicit ZeroSpeed(double t_)
      : Error("curve is stationary at t=" + std::to_string(t_)), t(t_) {}
};

struct InconsistentFibers : Error {
  using Error::Error;
};

struct InvalidArgument : Error {
  using Error::Error;
};

struct BadInput : Error {
  std::string path;
  std::string reason;
  BadInput(std::string path_, std::string reason_)
      : Error(path_ + ": " + reason_),
        path(std::move(path_)),
        reason(std::move(reason_)) {}
};

}  // namespace grassflow
