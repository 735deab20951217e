#pragma once

namespace grassflow::tol {

// Relative rank cutoff: sigma_min must exceed rank_tol * sigma_max.
inline constexpr double rank_tol = 1e-10;

// A complex eigenvalue is accepted as a real root when
// |imag| <= root_tol * (1 + |real|).
inline constexpr double root_tol = 1e-9;

// Roots closer than this are merged; partition intervals narrower than this
// are dropped from monotonicity checking.
inline constexpr double root_merge_tol = 1e-8;

// Absolute tolerance of arc-length quadrature.
inline constexpr double length_tol = 1e-8;

// Largest tolerated negative forward difference of the angle function.
inline constexpr double mono_tol = 1e-10;

// Orthonormality defect allowed in stored bases.
inline constexpr double ortho_tol = 1e-10;

// Two points are the same subspace when their largest principal angle is
// below this.
inline constexpr double span_eq_tol = 1e-8;

// Below this speed the curve counts as stationary.
inline constexpr double speed_floor = 1e-10;

}  // namespace grassflow::tol
