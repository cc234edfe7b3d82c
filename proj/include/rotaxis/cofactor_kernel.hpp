#pragma once

// Kernel vectors built from cofactors. For a rank-2 matrix M the Laplace
// identity sum_k m_ik A_jk = delta_ij det M makes every cofactor row a kernel
// vector; applied to A - lambda I this gives eigenvectors without a solver.

#include <array>
#include <cmath>

#include "rotaxis/axis_vectors.hpp"
#include "rotaxis/error.hpp"
#include "rotaxis/linalg.hpp"

namespace rotaxis {

/// (p, q, r) of the skew matrix [[0,-r,q],[r,0,-p],[-q,p,0]].
struct SkewParams {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;

  Vec3d vec() const { return {p, q, r}; }
  bool operator==(const SkewParams&) const = default;
};

inline Mat3d skew_matrix(const SkewParams& s) {
  return {{{{0.0, -s.r, s.q}, {s.r, 0.0, -s.p}, {-s.q, s.p, 0.0}}}};
}

inline Mat3d skew_matrix(const Vec3d& v) { return skew_matrix(SkewParams{v[0], v[1], v[2]}); }

/// The three rows of cofactor_matrix(m). Kernel vectors only when det(m) = 0.
template <class T>
std::array<Vec3<T>, 3> rank2_kernel_rows(const Mat3<T>& m) {
  const Mat3<T> c = cofactor_matrix(m);
  return {c.row(0), c.row(1), c.row(2)};
}

/// Index of the row with the largest max-norm, lowest index on ties.
inline int largest_row(const std::array<Vec3d, 3>& rows) {
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (norm_inf(rows[i]) > norm_inf(rows[best])) best = i;
  return best;
}

/// Unit eigenvector for lambda = +-1 from the largest cofactor row of A - lambda I.
inline Vec3d eigvec_via_cofactors(const OrthogonalMatrix& a, double lambda) {
  if (lambda != 1.0 && lambda != -1.0) {
    throw Error(ErrorKind::NotAnEigenvalue, "lambda must be +1 or -1", lambda);
  }
  const Mat3d shifted = a.m - lambda * identity();
  const double d = det3(shifted);
  if (std::abs(d) > 1e-8) {
    throw Error(ErrorKind::NotAnEigenvalue, "det(A - lambda I) is not zero", d);
  }
  const auto rows = rank2_kernel_rows(shifted);
  const Vec3d& best = rows[largest_row(rows)];
  if (norm_inf(best) <= tol::kRankDeficient) {
    throw Error(ErrorKind::RankDeficient, "eigenspace has dimension >= 2");
  }
  return normalized(best);
}

struct SymmetricKernelCheck {
  Vec3d u;
  double residual_square;  // ||A^2 u - u||_inf
};

/// U spans ker(A - A^T), hence A^2 U = U for every orthogonal A.
inline SymmetricKernelCheck symmetric_kernel_check(const OrthogonalMatrix& a) {
  const Vec3d u = vector_u(a);
  const Vec3d r = (a.m * (a.m * u)) - u;
  return {u, norm_inf(r)};
}

}  // namespace rotaxis
