#pragma once

// Spectral projection of a rotation A onto its fixed line, two ways:
//
//   ADJUGATE  P = adj(I - A) / |1 - lambda|^2   (residue at the simple pole z = 1)
//   CONTOUR   P = (1 / 2 pi i) \oint (zI - A)^{-1} dz   on a circle around 1
//
// where lambda, conj(lambda) are the other two eigenvalues. |1 - lambda|^2 is
// 3 - trace(A); it is evaluated as trace(adj(I - A)), the same quantity
// expressed through the principal 2x2 minors, which keeps full relative
// precision for small rotation angles.

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

#include "rotaxis/axis_vectors.hpp"
#include "rotaxis/error.hpp"
#include "rotaxis/linalg.hpp"

namespace rotaxis {

using Complex = std::complex<double>;
using CMat3 = Mat3<Complex>;
using CVec3 = Vec3<Complex>;

enum class ProjectionMethod { Adjugate, Contour };

struct ProjectionReport {
  Mat3d p;
  Complex lambda;
  ProjectionMethod method;
  double imag_residual = 0.0;  // max |Im P_ij| (contour only)
};

namespace detail {

inline void require_rotation(const OrthogonalMatrix& a) {
  if (a.det_sign != 1) throw Error(ErrorKind::WrongDeterminant, "projection needs det = +1");
  if (is_identity_like(a)) throw Error(ErrorKind::IdentityInput, "eigenvalue 1 is not simple");
}

inline double one_minus_lambda_sq(const Mat3d& adj_i_minus_a) { return trace(adj_i_minus_a); }

inline CMat3 to_complex(const Mat3d& m) {
  CMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = Complex(m(i, j), 0.0);
  return r;
}

}  // namespace detail

/// lambda = e^{i theta} with theta the rotation angle in [0, pi].
inline Complex complex_eigenvalue(const OrthogonalMatrix& a) {
  detail::require_rotation(a);
  const double s = 0.5 * norm2(u_formula(a.m));
  const double c = 0.5 * (trace(a.m) - 1.0);
  const double theta = std::atan2(s, c);
  return {std::cos(theta), std::sin(theta)};
}

inline ProjectionReport projection_adjugate(const OrthogonalMatrix& a) {
  detail::require_rotation(a);
  const Mat3d adj = adjugate(identity() - a.m);
  const double denom = detail::one_minus_lambda_sq(adj);
  return {(1.0 / denom) * adj, complex_eigenvalue(a), ProjectionMethod::Adjugate, 0.0};
}

/// |1 - lambda|, the distance from 1 to the other eigenvalues.
inline double eigenvalue_separation(const OrthogonalMatrix& a) {
  detail::require_rotation(a);
  return std::sqrt(std::max(0.0, detail::one_minus_lambda_sq(adjugate(identity() - a.m))));
}

/// Trapezoid rule with `n_points` equispaced nodes on |z - 1| = radius. The
/// default radius is min(|1 - lambda| / 2, 1/2). Node contributions are
/// accumulated in index order.
inline ProjectionReport projection_contour(const OrthogonalMatrix& a, int n_points = 256,
                                           std::optional<double> radius = std::nullopt) {
  detail::require_rotation(a);
  const double sep = eigenvalue_separation(a);
  if (sep < 1e-6) {
    throw Error(ErrorKind::EigenvalueTooClose, "|1 - lambda| below 1e-6", sep);
  }
  if (n_points < 16) {
    throw Error(ErrorKind::InvalidArgument, "need at least 16 quadrature nodes", n_points);
  }
  const double rho = radius.value_or(std::min(0.5 * sep, 0.5));
  if (!(rho > 0.0) || !(rho < sep)) {
    throw Error(ErrorKind::InvalidArgument, "radius must lie in (0, |1 - lambda|)", rho);
  }

  const CMat3 ac = detail::to_complex(a.m);
  const CMat3 eye = identity_like(Complex(0.0));
  CMat3 sum{};
  for (int k = 0; k < n_points; ++k) {
    const double th = 2.0 * std::numbers::pi * k / n_points;
    const Complex step = rho * Complex(std::cos(th), std::sin(th));
    const CMat3 zi_minus_a = (Complex(1.0) + step) * eye - ac;
    // (zI - A)^{-1} dz / (2 pi i)  with dz = i step dtheta
    const Complex weight = step / det3(zi_minus_a);
    sum = sum + weight * adjugate(zi_minus_a);
  }

  ProjectionReport out{identity(), complex_eigenvalue(a), ProjectionMethod::Contour, 0.0};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Complex v = sum(i, j) / static_cast<double>(n_points);
      out.p(i, j) = v.real();
      out.imag_residual = std::max(out.imag_residual, std::abs(v.imag()));
    }
  }
  return out;
}

}  // namespace rotaxis
