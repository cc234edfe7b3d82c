#pragma once

// Reference computations that do not share code with the library: Leibniz
// determinants, explicit minors, Eigen's general eigensolver and SVD, and
// exhaustive search over Z_p^3.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "rotaxis/finite_field.hpp"
#include "rotaxis/linalg.hpp"
#include "rotaxis/resolvent.hpp"

namespace oracle {

using rotaxis::Complex;
using rotaxis::Mat3d;
using rotaxis::Vec3d;

/// sum over permutations of sgn(s) prod m_{i, s(i)}.
template <class T>
T det_leibniz(const rotaxis::Mat3<T>& m) {
  constexpr std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};
  constexpr std::array<int, 6> sign{1, 1, 1, -1, -1, -1};
  T acc = m(0, 0) - m(0, 0);
  for (int s = 0; s < 6; ++s) {
    const T term = m(0, perms[s][0]) * m(1, perms[s][1]) * m(2, perms[s][2]);
    acc = sign[s] > 0 ? acc + term : acc - term;
  }
  return acc;
}

/// (-1)^(i+j) det of the explicitly assembled 2x2 submatrix (0-based i, j).
inline double cofactor_by_minor(const Mat3d& m, int i, int j) {
  std::vector<double> sub;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      if (r != i && c != j) sub.push_back(m(r, c));
  const double minor = sub[0] * sub[3] - sub[1] * sub[2];
  return ((i + j) % 2 == 0 ? 1.0 : -1.0) * minor;
}

inline Eigen::Matrix3d to_eigen(const Mat3d& m) {
  Eigen::Matrix3d e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e(i, j) = m(i, j);
  return e;
}

/// Unit eigenvector for the eigenvalue closest to `target` from Eigen's
/// general (Schur-based) eigensolver.
inline Vec3d eigensolver_axis(const Mat3d& m, double target) {
  Eigen::EigenSolver<Eigen::Matrix3d> es(to_eigen(m));
  int best = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(es.eigenvalues()[k] - target) < std::abs(es.eigenvalues()[best] - target)) best = k;
  Eigen::Vector3cd v = es.eigenvectors().col(best);
  // rotate the phase so the largest component is real
  int big = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(v[k]) > std::abs(v[big])) big = k;
  v *= std::conj(v[big]) / std::abs(v[big]);
  return rotaxis::normalized({v[0].real(), v[1].real(), v[2].real()});
}

/// Right singular vector of the smallest singular value of (A - lambda I).
inline rotaxis::CVec3 complex_null_vector(const rotaxis::CMat3& a, Complex lambda) {
  Eigen::Matrix3cd e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e(i, j) = a(i, j) - (i == j ? lambda : Complex(0.0));
  Eigen::JacobiSVD<Eigen::Matrix3cd> svd(e, Eigen::ComputeFullV);
  const Eigen::Vector3cd v = svd.matrixV().col(2);
  return {v[0], v[1], v[2]};
}

/// Angle between complex lines: acos |<u, v>| / (|u| |v|).
inline double complex_line_angle(const rotaxis::CVec3& u, const rotaxis::CVec3& v) {
  Complex ip(0.0);
  double nu = 0.0, nv = 0.0;
  for (int i = 0; i < 3; ++i) {
    ip += std::conj(u[i]) * v[i];
    nu += std::norm(u[i]);
    nv += std::norm(v[i]);
  }
  const double c = std::min(1.0, std::abs(ip) / std::sqrt(nu * nv));
  // sin form is accurate for nearly parallel lines
  return std::asin(std::sqrt(std::max(0.0, 1.0 - c * c)));
}

/// Every v in Z_p^3 \ {0} with m v = v (exhaustive).
inline std::vector<std::array<std::uint64_t, 3>> fixed_vectors_bruteforce(const rotaxis::FpMat3& m) {
  const std::uint64_t p = m(0, 0).p;
  std::vector<std::array<std::uint64_t, 3>> out;
  for (std::uint64_t x = 0; x < p; ++x)
    for (std::uint64_t y = 0; y < p; ++y)
      for (std::uint64_t z = 0; z < p; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
          const std::uint64_t s = (m(i, 0).v * x + m(i, 1).v * y + m(i, 2).v * z) % p;
          const std::uint64_t want = i == 0 ? x : (i == 1 ? y : z);
          ok = s == want;
        }
        if (ok) out.push_back({x, y, z});
      }
  return out;
}

}  // namespace oracle
