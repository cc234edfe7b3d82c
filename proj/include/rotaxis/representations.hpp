#pragma once

// Rotation parameterizations: unit quaternions, axis-angle (exponential
// map), Cayley skew parameters and products of two reflections, plus a
// seeded Haar sampler.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

#include "rotaxis/axis_vectors.hpp"
#include "rotaxis/cofactor_kernel.hpp"
#include "rotaxis/error.hpp"
#include "rotaxis/extract.hpp"
#include "rotaxis/linalg.hpp"
#include "rotaxis/random.hpp"

namespace rotaxis {

/// q = a + b i + c j + d k.
struct Quaternion {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  double norm_sq() const { return a * a + b * b + c * c + d * d; }
  Vec3d vec() const { return {b, c, d}; }
  bool operator==(const Quaternion&) const = default;
};

struct AxisAngle {
  Vec3d axis{1.0, 0.0, 0.0};
  double angle = 0.0;
};

struct ReflectionPair {
  Vec3d x;
  Vec3d y;
  double c = 0.0;  // <x, y>
};

inline ReflectionPair make_reflection_pair(const Vec3d& x, const Vec3d& y) {
  return {x, y, dot(x, y)};
}

namespace detail {
inline void require_unit(const Vec3d& v, const char* what) {
  const double n = norm2(v);
  if (!(std::abs(n - 1.0) <= 1e-12)) throw Error(ErrorKind::NotUnit, what, n);
}
}  // namespace detail

// --- quaternions --------------------------------------------------------------

/// Matrix of w -> q w q^{-1} on pure quaternions.
inline OrthogonalMatrix quat_to_matrix(const Quaternion& q) {
  if (!(std::abs(q.norm_sq() - 1.0) <= 1e-12)) {
    throw Error(ErrorKind::NotUnit, "quaternion norm^2 differs from 1", q.norm_sq());
  }
  const double a = q.a, b = q.b, c = q.c, d = q.d;
  const Mat3d m{{{{a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (a * c + b * d)},
                  {2 * (b * c + a * d), a * a + c * c - b * b - d * d, 2 * (c * d - a * b)},
                  {2 * (b * d - a * c), 2 * (a * b + c * d), a * a + d * d - b * b - c * c}}}};
  return {m, orthogonality_residual(m), 1};
}

/// Sign convention: a >= 0; when a == 0 the first nonzero of (b, c, d) is positive.
inline Quaternion canonical(Quaternion q) {
  bool flip = q.a < 0.0;
  if (q.a == 0.0) {
    for (double x : {q.b, q.c, q.d}) {
      if (x != 0.0) {
        flip = x < 0.0;
        break;
      }
    }
  }
  if (flip) q = {-q.a, -q.b, -q.c, -q.d};
  return q;
}

/// Inverse of quat_to_matrix, branching on the largest of 4a^2 = 1 + trace,
/// 4b^2 = 1 + a11 - a22 - a33, 4c^2, 4d^2.
inline Quaternion matrix_to_quat(const OrthogonalMatrix& rot) {
  if (rot.det_sign != 1) throw Error(ErrorKind::WrongDeterminant, "quaternions represent rotations");
  const Mat3d& m = rot.m;
  const std::array<double, 4> t{1.0 + trace(m), 1.0 + m(0, 0) - m(1, 1) - m(2, 2),
                                1.0 - m(0, 0) + m(1, 1) - m(2, 2), 1.0 - m(0, 0) - m(1, 1) + m(2, 2)};
  const auto branch = std::max_element(t.begin(), t.end()) - t.begin();
  const double s = 0.5 * std::sqrt(t[branch]);
  const double f = 0.25 / s;
  Quaternion q;
  switch (branch) {
    case 0:
      q = {s, f * (m(2, 1) - m(1, 2)), f * (m(0, 2) - m(2, 0)), f * (m(1, 0) - m(0, 1))};
      break;
    case 1:
      q = {f * (m(2, 1) - m(1, 2)), s, f * (m(0, 1) + m(1, 0)), f * (m(0, 2) + m(2, 0))};
      break;
    case 2:
      q = {f * (m(0, 2) - m(2, 0)), f * (m(0, 1) + m(1, 0)), s, f * (m(1, 2) + m(2, 1))};
      break;
    default:
      q = {f * (m(1, 0) - m(0, 1)), f * (m(0, 2) + m(2, 0)), f * (m(1, 2) + m(2, 1)), s};
      break;
  }
  const double n = std::sqrt(q.norm_sq());
  return canonical({q.a / n, q.b / n, q.c / n, q.d / n});
}

inline Quaternion axis_angle_to_quat(const AxisAngle& aa) {
  detail::require_unit(aa.axis, "axis must be unit");
  const double h = 0.5 * aa.angle;
  const double s = std::sin(h);
  return {std::cos(h), s * aa.axis[0], s * aa.axis[1], s * aa.axis[2]};
}

// --- exponential map ------------------------------------------------------------

/// R = I + sin(t) K + (1 - cos t) K^2 with K the skew matrix of the unit axis.
inline OrthogonalMatrix exp_so3(const AxisAngle& aa) {
  detail::require_unit(aa.axis, "axis must be unit");
  const Mat3d k = skew_matrix(aa.axis);
  const double s = std::sin(aa.angle);
  const double h = std::sin(0.5 * aa.angle);
  const Mat3d r = identity() + s * k + (2.0 * h * h) * (k * k);
  return {r, orthogonality_residual(r), 1};
}

/// Axis (right-hand rule) and angle in [0, pi]. The identity maps to angle 0
/// about e1.
inline AxisAngle log_so3(const OrthogonalMatrix& a) {
  if (a.det_sign != 1) throw Error(ErrorKind::WrongDeterminant, "log needs a rotation");
  if (is_identity_like(a)) return {{1.0, 0.0, 0.0}, 0.0};
  const EigenReport rep = extract_axis(a, Method::Auto);
  return {rep.axis, rep.angle};
}

// --- Cayley transform -------------------------------------------------------------

/// A = (I + Q)(I - Q)^{-1} in closed form:
///   1/(1+p^2+q^2+r^2) [[1+p^2-q^2-r^2, 2pq-2r,        2rp+2q],
///                      [2pq+2r,        1-p^2+q^2-r^2, 2qr-2p],
///                      [2rp-2q,        2qr+2p,        1-p^2-q^2+r^2]]
inline OrthogonalMatrix cayley_compose(const SkewParams& s) {
  const double p = s.p, q = s.q, r = s.r;
  const double pp = p * p, qq = q * q, rr = r * r;
  const double k = 1.0 / (1.0 + pp + qq + rr);
  const Mat3d m{{{{k * (1 + pp - qq - rr), k * (2 * p * q - 2 * r), k * (2 * r * p + 2 * q)},
                  {k * (2 * p * q + 2 * r), k * (1 - pp + qq - rr), k * (2 * q * r - 2 * p)},
                  {k * (2 * r * p - 2 * q), k * (2 * q * r + 2 * p), k * (1 - pp - qq + rr)}}}};
  return {m, orthogonality_residual(m), 1};
}

/// Skew parameters of Q = (A - I)(A + I)^{-1}. Reading them off the closed
/// form above: (p, q, r) = (a32 - a23, a13 - a31, a21 - a12) / (1 + trace).
inline SkewParams cayley_decompose(const OrthogonalMatrix& a) {
  if (a.det_sign != 1) throw Error(ErrorKind::WrongDeterminant, "Cayley needs a rotation");
  const double denom = 1.0 + trace(a.m);
  if (!(denom > tol::kCayley)) {
    throw Error(ErrorKind::MinusOneEigenvalue, "trace <= -1 + 1e-9", denom - 1.0);
  }
  const Vec3d w = -1.0 * u_formula(a.m);
  return {w[0] / denom, w[1] / denom, w[2] / denom};
}

// --- two reflections --------------------------------------------------------------

struct ReflectionProduct {
  OrthogonalMatrix a;
  Vec3d axis;  // x cross y, not normalized
};

inline Mat3d reflection_product_matrix(const ReflectionPair& pr) {
  auto householder = [](const Vec3d& v) {
    Mat3d h = identity();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) h(i, j) -= 2.0 * v[i] * v[j];
    return h;
  };
  return householder(pr.x) * householder(pr.y);
}

/// (I - 2xx^T)(I - 2yy^T), a rotation about x cross y.
inline ReflectionProduct compose_reflections(const ReflectionPair& pr) {
  detail::require_unit(pr.x, "x must be unit");
  detail::require_unit(pr.y, "y must be unit");
  const Vec3d z = cross(pr.x, pr.y);
  if (norm2(z) <= 1e-12) {
    throw Error(ErrorKind::ParallelReflections, "x and y are parallel, product is I");
  }
  const Mat3d m = reflection_product_matrix(pr);
  return {{m, orthogonality_residual(m), 1}, z};
}

/// max_{i != j} |(a_ij + a_ji) - (-4 x_i x_j - 4 y_i y_j + 4c (x_i y_j + x_j y_i))|.
inline double reflection_sum_identity_residual(const ReflectionPair& pr) {
  const Mat3d m = reflection_product_matrix(pr);
  const Vec3d& x = pr.x;
  const Vec3d& y = pr.y;
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const double rhs = -4 * x[i] * x[j] - 4 * y[i] * y[j] + 4 * pr.c * (x[i] * y[j] + x[j] * y[i]);
      worst = std::max(worst, std::abs(m(i, j) + m(j, i) - rhs));
    }
  }
  return worst;
}

// --- sampling ------------------------------------------------------------------

/// Haar rotation: four standard normals normalized to a unit quaternion.
inline OrthogonalMatrix random_rotation(SplitMix64& gen) {
  const auto [n0, n1] = gen.normal_pair();
  const auto [n2, n3] = gen.normal_pair();
  const double n = std::sqrt(n0 * n0 + n1 * n1 + n2 * n2 + n3 * n3);
  return quat_to_matrix({n0 / n, n1 / n, n2 / n, n3 / n});
}

inline OrthogonalMatrix random_rotation(std::uint64_t seed) {
  SplitMix64 gen(seed);
  return random_rotation(gen);
}

inline Vec3d random_unit_vector(SplitMix64& gen) {
  const auto [n0, n1] = gen.normal_pair();
  const auto [n2, unused] = gen.normal_pair();
  (void)unused;
  return normalized({n0, n1, n2});
}

/// Uniformly random axis with a prescribed angle.
inline OrthogonalMatrix random_rotation_with_angle(SplitMix64& gen, double angle) {
  return exp_so3({random_unit_vector(gen), angle});
}

}  // namespace rotaxis
