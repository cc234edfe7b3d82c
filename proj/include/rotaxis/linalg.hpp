#pragma once

// Small fixed-size 3x3 kernels shared by every module. Everything here is a
// template over the scalar type so the same cofactor code runs on double,
// std::complex<double> and the prime-field scalar in finite_field.hpp.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include "rotaxis/error.hpp"

namespace rotaxis {

/// Constants deciding when a floating-point quantity counts as zero.
namespace tol {
inline constexpr double kOrthogonal = 1e-9;   // default max-norm of m^T m - I
inline constexpr double kDegenerate = 1e-7;   // |a_ij + a_ji| below this is a zero denominator
inline constexpr double kSymmetric = 1e-7;    // ||U||_inf below this means A = A^T
inline constexpr double kIdentity = 1e-12;    // max |a_ij - delta_ij| below this means A = I
inline constexpr double kCayley = 1e-9;       // trace + 1 below this means -1 is an eigenvalue
inline constexpr double kRankDeficient = 1e-12;
}  // namespace tol

/// Scalar hooks needed by generic code that must manufacture 0 or 1. The
/// `like` argument lets runtime-parameterised scalars (Z_p) copy their modulus.
template <class T>
struct ScalarOps {
  static T zero(const T&) { return T(0); }
  static T one(const T&) { return T(1); }
};

/// Row/column selector, 1-based in meaning (`one` is index 1).
enum class Index : int { one = 0, two = 1, three = 2 };

inline constexpr std::array<Index, 3> kIndices{Index::one, Index::two, Index::three};

inline constexpr int pos(Index i) { return static_cast<int>(i); }

/// Converts a 1-based index; throws IndexOutOfRange outside {1,2,3}.
inline Index index_from_one_based(int i) {
  if (i < 1 || i > 3) {
    throw Error(ErrorKind::IndexOutOfRange, "index " + std::to_string(i) + " not in {1,2,3}");
  }
  return static_cast<Index>(i - 1);
}

template <class T>
struct Vec3 {
  std::array<T, 3> v;

  T& operator[](std::size_t i) { return v[i]; }
  const T& operator[](std::size_t i) const { return v[i]; }
  T& operator()(Index i) { return v[pos(i)]; }
  const T& operator()(Index i) const { return v[pos(i)]; }

  bool operator==(const Vec3&) const = default;
};

template <class T>
struct Mat3 {
  // Row-major: a[i][j] is row i, column j (0-based).
  std::array<std::array<T, 3>, 3> a;

  T& operator()(int i, int j) { return a[i][j]; }
  const T& operator()(int i, int j) const { return a[i][j]; }
  T& operator()(Index i, Index j) { return a[pos(i)][pos(j)]; }
  const T& operator()(Index i, Index j) const { return a[pos(i)][pos(j)]; }

  Vec3<T> row(int i) const { return {a[i][0], a[i][1], a[i][2]}; }
  Vec3<T> col(int j) const { return {a[0][j], a[1][j], a[2][j]}; }

  bool operator==(const Mat3&) const = default;
};

using Vec3d = Vec3<double>;
using Mat3d = Mat3<double>;

template <class T>
Mat3<T> identity_like(const T& like) {
  const T z = ScalarOps<T>::zero(like);
  const T o = ScalarOps<T>::one(like);
  return {{{{o, z, z}, {z, o, z}, {z, z, o}}}};
}

inline Mat3d identity() { return identity_like(0.0); }

inline Mat3d diag(double x, double y, double z) { return {{{{x, 0, 0}, {0, y, 0}, {0, 0, z}}}}; }

// --- elementwise arithmetic -------------------------------------------------

template <class T>
Vec3<T> operator+(const Vec3<T>& u, const Vec3<T>& w) {
  return {u[0] + w[0], u[1] + w[1], u[2] + w[2]};
}
template <class T>
Vec3<T> operator-(const Vec3<T>& u, const Vec3<T>& w) {
  return {u[0] - w[0], u[1] - w[1], u[2] - w[2]};
}
template <class T>
Vec3<T> operator-(const Vec3<T>& u) {
  return {-u[0], -u[1], -u[2]};
}
template <class T, class S>
Vec3<T> operator*(const S& s, const Vec3<T>& u) {
  return {s * u[0], s * u[1], s * u[2]};
}

template <class T>
Mat3<T> operator+(const Mat3<T>& x, const Mat3<T>& y) {
  Mat3<T> r = x;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = x(i, j) + y(i, j);
  return r;
}
template <class T>
Mat3<T> operator-(const Mat3<T>& x, const Mat3<T>& y) {
  Mat3<T> r = x;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = x(i, j) - y(i, j);
  return r;
}
template <class T, class S>
Mat3<T> operator*(const S& s, const Mat3<T>& x) {
  Mat3<T> r = x;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = s * x(i, j);
  return r;
}

template <class T>
Mat3<T> operator*(const Mat3<T>& x, const Mat3<T>& y) {
  Mat3<T> r = x;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j) + x(i, 2) * y(2, j);
  return r;
}

template <class T>
Vec3<T> operator*(const Mat3<T>& x, const Vec3<T>& u) {
  return {x(0, 0) * u[0] + x(0, 1) * u[1] + x(0, 2) * u[2],
          x(1, 0) * u[0] + x(1, 1) * u[1] + x(1, 2) * u[2],
          x(2, 0) * u[0] + x(2, 1) * u[1] + x(2, 2) * u[2]};
}

template <class T>
Mat3<T> transpose(const Mat3<T>& x) {
  Mat3<T> r = x;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = x(j, i);
  return r;
}

template <class T>
T trace(const Mat3<T>& x) {
  return x(0, 0) + x(1, 1) + x(2, 2);
}

template <class T>
T dot(const Vec3<T>& u, const Vec3<T>& w) {
  return u[0] * w[0] + u[1] * w[1] + u[2] * w[2];
}

/// Vector product, componentwise (u2 w3 - u3 w2, u3 w1 - u1 w3, u1 w2 - u2 w1).
template <class T>
Vec3<T> cross(const Vec3<T>& u, const Vec3<T>& w) {
  return {u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
}

// --- determinant and cofactors ---------------------------------------------

/// Determinant by cofactor expansion along the first row.
template <class T>
T det3(const Mat3<T>& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

/// (-1)^(i+j) times the 2x2 minor with row i and column j deleted.
template <class T>
T cofactor(const Mat3<T>& m, Index i, Index j) {
  const int r = pos(i), c = pos(j);
  const int r0 = r == 0 ? 1 : 0, r1 = r == 2 ? 1 : 2;
  const int c0 = c == 0 ? 1 : 0, c1 = c == 2 ? 1 : 2;
  const T minor = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
  return (r + c) % 2 == 0 ? minor : -minor;
}

/// Same as cofactor(m, Index, Index) with 1-based integers.
template <class T>
T cofactor(const Mat3<T>& m, int i, int j) {
  return cofactor(m, index_from_one_based(i), index_from_one_based(j));
}

/// Matrix whose (i,j) entry is cofactor(m,i,j); its rows are the kernel
/// candidates of a rank-2 matrix.
template <class T>
Mat3<T> cofactor_matrix(const Mat3<T>& m) {
  Mat3<T> r = m;
  for (Index i : kIndices)
    for (Index j : kIndices) r(i, j) = cofactor(m, i, j);
  return r;
}

/// Transposed cofactor matrix: m * adjugate(m) = det3(m) * I.
template <class T>
Mat3<T> adjugate(const Mat3<T>& m) {
  return transpose(cofactor_matrix(m));
}

// --- real-valued norms and helpers -------------------------------------------

inline double norm_inf(const Vec3d& u) {
  return std::max({std::abs(u[0]), std::abs(u[1]), std::abs(u[2])});
}

inline double norm2(const Vec3d& u) { return std::hypot(u[0], u[1], u[2]); }

inline double norm_inf(const Mat3d& m) {
  double r = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r = std::max(r, std::abs(m(i, j)));
  return r;
}

/// Largest absolute row sum (operator infinity norm).
inline double row_norm(const Mat3d& m) {
  double r = 0.0;
  for (int i = 0; i < 3; ++i)
    r = std::max(r, std::abs(m(i, 0)) + std::abs(m(i, 1)) + std::abs(m(i, 2)));
  return r;
}

inline Vec3d normalized(const Vec3d& u) {
  const double n = norm2(u);
  return {u[0] / n, u[1] / n, u[2] / n};
}

/// Angle between two directions in [0, pi].
inline double angle_between(const Vec3d& u, const Vec3d& w) {
  return std::atan2(norm2(cross(u, w)), dot(u, w));
}

/// Angle between the lines spanned by u and w, in [0, pi/2].
inline double line_angle(const Vec3d& u, const Vec3d& w) {
  return std::atan2(norm2(cross(u, w)), std::abs(dot(u, w)));
}

/// max-norm of m^T m - I.
inline double orthogonality_residual(const Mat3d& m) {
  return norm_inf(transpose(m) * m - identity());
}

// --- validated orthogonal matrices ------------------------------------------

struct OrthogonalMatrix {
  Mat3d m;
  double ortho_residual = 0.0;
  int det_sign = 1;

  double operator()(int i, int j) const { return m(i, j); }
  double operator()(Index i, Index j) const { return m(i, j); }
};

/// Accepts m iff max|m^T m - I| <= tol; throws NotOrthogonal with the residual.
inline OrthogonalMatrix validate_orthogonal(const Mat3d& m, double tolerance = tol::kOrthogonal) {
  if (!(tolerance > 0.0)) {
    throw Error(ErrorKind::NotOrthogonal, "tolerance must be positive", tolerance);
  }
  const double res = orthogonality_residual(m);
  const double d = det3(m);
  // |det| - 1 is bounded by ~1.5 * residual once m^T m is that close to I.
  if (!(res <= tolerance) || !(std::abs(std::abs(d) - 1.0) <= 2.0 * tolerance)) {
    throw Error(ErrorKind::NotOrthogonal, "max|m^T m - I| = " + format_value(res), res);
  }
  return {m, res, d > 0.0 ? 1 : -1};
}

/// Entrywise |cofactor(m,i,j) - m(i,j)|; every rotation equals its cofactor matrix.
inline Mat3d cofactor_identity_residual(const OrthogonalMatrix& a) {
  if (a.det_sign != 1) {
    throw Error(ErrorKind::WrongDeterminant, "cofactor identity needs det = +1");
  }
  Mat3d r = cofactor_matrix(a.m) - a.m;
  for (auto& row : r.a)
    for (double& x : row) x = std::abs(x);
  return r;
}

/// max_{i,j} |sum_k m_ik A_jk - delta_ij det m| (Laplace expansion along rows).
inline double laplace_cofactor_residual(const Mat3d& m) {
  const Mat3d c = cofactor_matrix(m);
  const double d = det3(m);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double s = m(i, 0) * c(j, 0) + m(i, 1) * c(j, 1) + m(i, 2) * c(j, 2);
      worst = std::max(worst, std::abs(s - (i == j ? d : 0.0)));
    }
  }
  return worst;
}

/// The coordinate rotations used throughout the tests and examples.
inline Mat3d rot_x(double t) {
  const double c = std::cos(t), s = std::sin(t);
  return {{{{1, 0, 0}, {0, c, -s}, {0, s, c}}}};
}
inline Mat3d rot_y(double t) {
  const double c = std::cos(t), s = std::sin(t);
  return {{{{c, 0, s}, {0, 1, 0}, {-s, 0, c}}}};
}
inline Mat3d rot_z(double t) {
  const double c = std::cos(t), s = std::sin(t);
  return {{{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}}};
}

}  // namespace rotaxis
