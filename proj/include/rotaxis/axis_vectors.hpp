#pragma once

// Closed-form fixed vectors of a 3x3 orthogonal matrix:
//
//   V  = (1/(a23+a32), 1/(a13+a31), 1/(a12+a21))
//   U  = (a23-a32, a31-a13, a12-a21)
//   W1 = (c+a11-a22-a33, a12+a21, a13+a31)     W2, W3 cyclically
//
// with c = det(A) = +-1. For a rotation all three satisfy A x = x; for an
// improper orthogonal matrix they satisfy A x = -x. The raw `*_formula`
// templates evaluate the expressions over any scalar (including Z_p); the
// OrthogonalMatrix overloads add the floating-point degeneracy checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "rotaxis/error.hpp"
#include "rotaxis/linalg.hpp"

namespace rotaxis {

// Off-diagonal pair (i,j) with i < j, and the third index k.
struct PairIndex {
  int i, j, k;
};
inline constexpr std::array<PairIndex, 3> kPairs{{{1, 2, 0}, {0, 2, 1}, {0, 1, 2}}};

// --- raw formulas -----------------------------------------------------------

template <class T>
Vec3<T> pair_sums(const Mat3<T>& m) {
  return {m(1, 2) + m(2, 1), m(0, 2) + m(2, 0), m(0, 1) + m(1, 0)};
}

template <class T>
Vec3<T> v_formula(const Mat3<T>& m) {
  const Vec3<T> s = pair_sums(m);
  const T one = ScalarOps<T>::one(m(0, 0));
  return {one / s[0], one / s[1], one / s[2]};
}

template <class T>
Vec3<T> u_formula(const Mat3<T>& m) {
  return {m(1, 2) - m(2, 1), m(2, 0) - m(0, 2), m(0, 1) - m(1, 0)};
}

/// W_i with the leading constant `c` (1 for rotations, det for O(3), or the
/// scale factor of cA'). Diagonal entry is grouped (c + a_ii) - (a_jj + a_kk).
template <class T>
Vec3<T> w_formula(const Mat3<T>& m, Index which, const T& c) {
  const int i = pos(which), j = (i + 1) % 3, k = (i + 2) % 3;
  Vec3<T> w{m(0, 0), m(0, 0), m(0, 0)};
  w[i] = (c + m(i, i)) - (m(j, j) + m(k, k));
  w[j] = m(i, j) + m(j, i);
  w[k] = m(i, k) + m(k, i);
  return w;
}

/// Signed residuals (lhs - rhs) of the three quadratic/quartic identities
/// satisfied by rotation entries, for i = 1,2,3 with (j,k) the other two
/// indices in cyclic order. Layout: [3*i + identity].
template <class T>
std::array<T, 9> rotation_identity_terms(const Mat3<T>& m) {
  std::array<T, 9> out{m(0, 0), m(0, 0), m(0, 0), m(0, 0), m(0, 0),
                       m(0, 0), m(0, 0), m(0, 0), m(0, 0)};
  const T one = ScalarOps<T>::one(m(0, 0));
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const T sjk = m(j, k) + m(k, j);
    const T cross1 = m(i, j) * m(k, i) + m(j, i) * m(i, k);
    const T cross2 = m(i, j) * m(i, k) + m(j, i) * m(k, i);
    const T diag = m(i, j) * m(j, i) + m(i, k) * m(k, i);
    out[3 * i + 0] = (one + m(i, i)) * sjk - cross1;
    out[3 * i + 1] = (m(j, j) + m(k, k)) * sjk + cross2;
    out[3 * i + 2] = (m(i, j) * m(i, j) + m(i, k) * m(i, k)) * cross2 - cross1 * diag;
  }
  return out;
}

/// Signed residuals of (c + a_ii - a_jj - a_kk)(a_jk + a_kj) - (a_ij + a_ji)(a_ik + a_ki).
template <class T>
Vec3<T> product_identity_terms(const Mat3<T>& m, const T& c) {
  Vec3<T> out{m(0, 0), m(0, 0), m(0, 0)};
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    out[i] = ((c + m(i, i)) - (m(j, j) + m(k, k))) * (m(j, k) + m(k, j)) -
             (m(i, j) + m(j, i)) * (m(i, k) + m(k, i));
  }
  return out;
}

// --- floating-point wrappers -------------------------------------------------

/// Off-diagonal pairs (1-based, i<j) whose sum a_ij + a_ji is within eps of zero.
inline std::vector<IndexPair> degenerate_pairs(const Mat3d& m, double eps = tol::kDegenerate) {
  std::vector<IndexPair> out;
  const Vec3d s = pair_sums(m);
  // report in (1,2), (1,3), (2,3) order
  if (std::abs(s[2]) <= eps) out.emplace_back(1, 2);
  if (std::abs(s[1]) <= eps) out.emplace_back(1, 3);
  if (std::abs(s[0]) <= eps) out.emplace_back(2, 3);
  return out;
}

inline Vec3d vector_v(const OrthogonalMatrix& a, double eps = tol::kDegenerate) {
  if (auto bad = degenerate_pairs(a.m, eps); !bad.empty()) {
    throw Error(ErrorKind::DegenerateDenominator, "a_ij + a_ji vanishes", 0.0, std::move(bad));
  }
  return v_formula(a.m);
}

inline Vec3d vector_u(const OrthogonalMatrix& a) { return u_formula(a.m); }

inline Vec3d vector_w(const OrthogonalMatrix& a, Index i) {
  return w_formula(a.m, i, static_cast<double>(a.det_sign));
}

/// Absolute residuals of the nine rotation identities (see rotation_identity_terms).
inline std::array<double, 9> rotation_identity_residuals(const OrthogonalMatrix& a) {
  if (a.det_sign != 1) {
    throw Error(ErrorKind::WrongDeterminant, "identities hold for rotations only");
  }
  auto t = rotation_identity_terms(a.m);
  for (double& x : t) x = std::abs(x);
  return t;
}

/// max_i |(1 + a_ii - a_jj - a_kk)(a_jk + a_kj) - (a_ij + a_ji)(a_ik + a_ki)|.
inline double product_identity_residual(const OrthogonalMatrix& a) {
  return norm_inf(product_identity_terms(a.m, static_cast<double>(a.det_sign)));
}

/// The rotation part det(A)*A; its +1 eigenvector is A's det(A) eigenvector.
inline Mat3d proper_part(const OrthogonalMatrix& a) {
  return a.det_sign == 1 ? a.m : -1.0 * a.m;
}

/// True when det(A)*A is the identity within tol::kIdentity entrywise.
inline bool is_identity_like(const OrthogonalMatrix& a) {
  return norm_inf(proper_part(a) - identity()) <= tol::kIdentity;
}

/// Right-hand-rule orientation: flips `axis` so that it has nonnegative dot
/// with (b32-b23, b13-b31, b21-b12) of the proper part b. At angle pi that
/// vector vanishes and the first nonzero component is made positive instead.
inline Vec3d orient_axis(const Vec3d& axis, const Mat3d& proper) {
  const Vec3d w = -1.0 * u_formula(proper);
  const double d = dot(axis, w);
  if (norm_inf(w) > 1e-14 && d != 0.0) return d < 0.0 ? -axis : axis;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(axis[i]) > 1e-12) return axis[i] < 0.0 ? -axis : axis;
  }
  return axis;
}

// --- the zero-denominator taxonomy --------------------------------------------

enum class DegenerateBranch { Pair, Column };

struct DegenerateAxis {
  Vec3d axis;  // unit, right-hand oriented
  DegenerateBranch branch;
  // Pair branch: the symmetric pair (i,j) and remaining k, 1-based.
  // Column branch: k is the coordinate axis (or the index left out of the
  // reflection block); i, j are the other two.
  int i, j, k;
};

/// Fixed vector when some a_ij + a_ji vanishes, where V is undefined.
///
/// Two off-diagonal pairs (nearly) zero: the coordinate column shared by
/// them is fixed, or, when that diagonal entry is -1, the axis lies in the
/// complementary 2x2 reflection block. Otherwise exactly one pair is
/// symmetric, a_ij = a_ji, and with k the remaining index the vector
/// v_k = 0, v_i = a_kj, v_j = -a_ki is fixed.
inline DegenerateAxis degenerate_axis(const OrthogonalMatrix& a, double eps = tol::kDegenerate) {
  if (degenerate_pairs(a.m, eps).empty()) {
    throw Error(ErrorKind::NotDegenerate, "no off-diagonal pair sums to zero");
  }
  if (is_identity_like(a)) {
    throw Error(ErrorKind::IdentityInput, "every vector is fixed");
  }
  const Mat3d b = proper_part(a);
  auto finish = [&](Vec3d v, DegenerateBranch br, int i, int j, int k) {
    return DegenerateAxis{orient_axis(normalized(v), b), br, i + 1, j + 1, k + 1};
  };

  std::array<bool, 3> small{};
  int n_small = 0;
  for (int p = 0; p < 3; ++p) {
    const auto [i, j, k] = kPairs[p];
    small[p] = std::max(std::abs(b(i, j)), std::abs(b(j, i))) <= eps;
    n_small += small[p] ? 1 : 0;
  }

  if (n_small >= 2) {
    int k = 0;
    if (n_small == 3) {
      // diagonal +-1 matrix: pick the +1 entry
      for (int t = 1; t < 3; ++t)
        if (b(t, t) > b(k, k)) k = t;
    } else {
      const int open = small[0] ? (small[1] ? 2 : 1) : 0;  // the pair that is not small
      k = kPairs[open].k;
    }
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    const int lo = std::min(i, j), hi = std::max(i, j);
    Vec3d v{0.0, 0.0, 0.0};
    if (b(k, k) > 0.0) {
      v[k] = 1.0;
    } else {
      // block [[b_ii, b_ij], [b_ji, b_jj]] is a reflection; take its +1 vector
      const Vec3d c1{b(lo, hi), 1.0 - b(lo, lo), 0.0};
      const Vec3d c2{1.0 - b(hi, hi), b(hi, lo), 0.0};
      const Vec3d& c = norm_inf(c1) >= norm_inf(c2) ? c1 : c2;
      v[lo] = c[0];
      v[hi] = c[1];
    }
    return finish(v, DegenerateBranch::Column, lo, hi, k);
  }

  // Pair branch: the most symmetric pair with a nonzero rule vector.
  int best = -1;
  double best_asym = 0.0;
  for (int p = 0; p < 3; ++p) {
    const auto [i, j, k] = kPairs[p];
    const Vec3d rule_part{b(k, j), b(k, i), 0.0};
    if (norm_inf(rule_part) <= eps) continue;
    const double asym = std::abs(b(i, j) - b(j, i));
    if (best < 0 || asym < best_asym) {
      best = p;
      best_asym = asym;
    }
  }
  if (best < 0) {
    throw Error(ErrorKind::MethodInapplicable, "no usable symmetric pair");
  }
  const auto [i, j, k] = kPairs[best];
  Vec3d v{0.0, 0.0, 0.0};
  v[i] = b(k, j);
  v[j] = -b(k, i);
  return finish(v, DegenerateBranch::Pair, i, j, k);
}

/// Parameters of the matrices
///
///   [[ a,    r,    q  ],
///    [ -r,   b,    p  ],
///    [ e q, -e p,  e d]]
///
/// for which a_12 + a_21 = 0. Orthogonality forces a - b + d = +-1 (the
/// `branch`) and
///   p^2 = (a-b)(a+d),  q^2 = (a-b)(d-b),  r^2 = (a+d)(d-b),
/// with sign(q) fixed by pq = r(a-b); the signs of p and r are free.
struct DegenerateFamilyParams {
  double a = 0.0;
  double b = 0.0;
  int eps = 1;
  int branch = 1;
  int sign_p = 1;
  int sign_r = 1;
};

struct DegenerateFamilyValues {
  double d, p, q, r, c;
};

inline DegenerateFamilyValues degenerate_family_values(const DegenerateFamilyParams& prm) {
  auto is_sign = [](int s) { return s == 1 || s == -1; };
  if (!is_sign(prm.eps) || !is_sign(prm.branch) || !is_sign(prm.sign_p) || !is_sign(prm.sign_r)) {
    throw Error(ErrorKind::InfeasibleParameters, "sign parameters must be +1 or -1");
  }
  if (!(std::abs(prm.a) < 1.0)) {
    throw Error(ErrorKind::InfeasibleParameters, "need |a| < 1", prm.a);
  }
  const double a = prm.a, b = prm.b;
  const double d = prm.branch - a + b;
  const double amb = a - b, apd = a + d, dmb = d - b;
  const double p2 = amb * apd, q2 = amb * dmb, r2 = apd * dmb;
  const double worst = std::min({p2, q2, r2});
  if (worst < -1e-15) {
    throw Error(ErrorKind::InfeasibleParameters, "negative square", worst);
  }
  const double p = prm.sign_p * std::sqrt(std::max(p2, 0.0));
  const double r = prm.sign_r * std::sqrt(std::max(r2, 0.0));
  const double q_sign = (p * r * amb < 0.0) ? -1.0 : 1.0;
  const double q = q_sign * std::sqrt(std::max(q2, 0.0));
  return {d, p, q, r, prm.eps * d};
}

inline OrthogonalMatrix degenerate_family(const DegenerateFamilyParams& prm) {
  const auto [d, p, q, r, c] = degenerate_family_values(prm);
  const double e = prm.eps;
  const Mat3d m{{{{prm.a, r, q}, {-r, prm.b, p}, {e * q, -e * p, c}}}};
  try {
    return validate_orthogonal(m);
  } catch (const Error& err) {
    throw Error(ErrorKind::InfeasibleParameters, "assembled matrix is not orthogonal", err.value());
  }
}

}  // namespace rotaxis
