#pragma once

// The axis formulas over Z_p. Orthogonality and det = 1 are polynomial
// conditions, so the cofactor-based constructions carry over verbatim with
// exact modular arithmetic; only the floating-point thresholds disappear.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rotaxis/axis_vectors.hpp"
#include "rotaxis/cofactor_kernel.hpp"
#include "rotaxis/error.hpp"
#include "rotaxis/linalg.hpp"

namespace rotaxis {

inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 61;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

/// Throws unless p is an odd prime below 2^61.
inline void check_modulus(std::uint64_t p) {
  if (p >= kMaxModulus) throw Error(ErrorKind::ModulusTooLarge, "modulus must be < 2^61");
  if (p == 2 || !is_prime(p)) {
    throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not an odd prime");
  }
}

/// Element of Z_p. The modulus travels with the value; it is validated by
/// check_modulus where matrices enter the library, not per element.
struct Fp {
  std::uint64_t v = 0;
  std::uint64_t p = 0;

  static Fp make(long long x, std::uint64_t p) {
    const long long m = static_cast<long long>(p);
    long long r = x % m;
    if (r < 0) r += m;
    return {static_cast<std::uint64_t>(r), p};
  }

  bool is_zero() const { return v == 0; }
  bool operator==(const Fp&) const = default;

  /// Representative in (-p/2, p/2].
  long long centered() const {
    return v > p / 2 ? static_cast<long long>(v) - static_cast<long long>(p) : static_cast<long long>(v);
  }
};

inline Fp operator+(Fp x, Fp y) {
  std::uint64_t s = x.v + y.v;
  if (s >= x.p) s -= x.p;
  return {s, x.p};
}
inline Fp operator-(Fp x) { return {x.v == 0 ? 0 : x.p - x.v, x.p}; }
inline Fp operator-(Fp x, Fp y) { return x + (-y); }
inline Fp operator*(Fp x, Fp y) {
  const unsigned __int128 prod = static_cast<unsigned __int128>(x.v) * y.v;
  return {static_cast<std::uint64_t>(prod % x.p), x.p};
}

/// Multiplicative inverse by the extended Euclidean algorithm.
inline Fp fp_inverse(Fp x) {
  if (x.is_zero()) throw Error(ErrorKind::ZeroDivisor, "0 has no inverse mod " + std::to_string(x.p));
  long long r0 = static_cast<long long>(x.p), r1 = static_cast<long long>(x.v);
  __int128 t0 = 0, t1 = 1;
  while (r1 != 0) {
    const long long q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    const __int128 t2 = t0 - static_cast<__int128>(q) * t1;
    t0 = t1;
    t1 = t2;
  }
  __int128 inv = t0 % static_cast<__int128>(x.p);
  if (inv < 0) inv += x.p;
  return {static_cast<std::uint64_t>(inv), x.p};
}

inline Fp operator/(Fp x, Fp y) { return x * fp_inverse(y); }

template <>
struct ScalarOps<Fp> {
  static Fp zero(const Fp& like) { return {0, like.p}; }
  static Fp one(const Fp& like) { return {1, like.p}; }
};

using FpVec3 = Vec3<Fp>;
using FpMat3 = Mat3<Fp>;

/// Builds a matrix from integer entries (reduced mod p) after validating p.
inline FpMat3 fp_matrix(const std::array<std::array<long long, 3>, 3>& entries, std::uint64_t p) {
  check_modulus(p);
  FpMat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = Fp::make(entries[i][j], p);
  return m;
}

inline FpVec3 fp_vector(const std::array<long long, 3>& v, std::uint64_t p) {
  return {Fp::make(v[0], p), Fp::make(v[1], p), Fp::make(v[2], p)};
}

inline bool is_zero(const FpVec3& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

/// m^T m = I and det m = 1, exactly.
inline bool is_special_orthogonal_fp(const FpMat3& m) {
  const Fp one = ScalarOps<Fp>::one(m(0, 0));
  return transpose(m) * m == identity_like(one) && det3(m) == one;
}

namespace detail {
inline void require_special_orthogonal(const FpMat3& m) {
  if (!is_special_orthogonal_fp(m)) {
    throw Error(ErrorKind::NotOrthogonal, "matrix is not in SO_3(Z_p)");
  }
}
}  // namespace detail

inline FpVec3 vector_v_fp(const FpMat3& m) {
  detail::require_special_orthogonal(m);
  std::vector<IndexPair> bad;
  const FpVec3 s = pair_sums(m);
  if (s[2].is_zero()) bad.emplace_back(1, 2);
  if (s[1].is_zero()) bad.emplace_back(1, 3);
  if (s[0].is_zero()) bad.emplace_back(2, 3);
  if (!bad.empty()) {
    throw Error(ErrorKind::DegenerateDenominatorFp, "a_ij + a_ji = 0 mod p", 0.0, std::move(bad));
  }
  return v_formula(m);
}

inline FpVec3 vector_u_fp(const FpMat3& m) {
  detail::require_special_orthogonal(m);
  return u_formula(m);
}

inline FpVec3 vector_w_fp(const FpMat3& m, Index i) {
  detail::require_special_orthogonal(m);
  return w_formula(m, i, ScalarOps<Fp>::one(m(0, 0)));
}

/// Scales v so its first nonzero entry is 1.
inline FpVec3 canonical_scaling(const FpVec3& v) {
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_zero()) return fp_inverse(v[i]) * v;
  }
  return v;
}

/// Nonzero kernel vectors of m by Gauss-Jordan elimination mod p, one per
/// free column. Empty when m is invertible.
inline std::vector<FpVec3> kernel_basis_fp(FpMat3 m) {
  const Fp zero = ScalarOps<Fp>::zero(m(0, 0));
  const Fp one = ScalarOps<Fp>::one(m(0, 0));
  std::array<int, 3> pivot_col{-1, -1, -1};
  int rank = 0;
  for (int col = 0; col < 3 && rank < 3; ++col) {
    int piv = -1;
    for (int r = rank; r < 3; ++r)
      if (!m(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m.a[piv], m.a[rank]);
    const Fp inv = fp_inverse(m(rank, col));
    for (int c = 0; c < 3; ++c) m(rank, c) = m(rank, c) * inv;
    for (int r = 0; r < 3; ++r) {
      if (r == rank || m(r, col).is_zero()) continue;
      const Fp f = m(r, col);
      for (int c = 0; c < 3; ++c) m(r, c) = m(r, c) - f * m(rank, c);
    }
    pivot_col[rank++] = col;
  }
  std::vector<FpVec3> basis;
  for (int free = 0; free < 3; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.begin() + rank, free) != pivot_col.begin() + rank) continue;
    FpVec3 v{zero, zero, zero};
    v[free] = one;
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -m(r, free);
    basis.push_back(v);
  }
  return basis;
}

enum class KernelPath { Cofactor, Elimination };

struct FpCertificate {
  FpVec3 v;          // canonical scaling, m v = v
  KernelPath path;   // which construction produced v
};

/// A nonzero fixed vector of m, proving eigenvalue 1. Uses the first nonzero
/// cofactor row of m - I; when all rows vanish (m - I has rank <= 1) falls
/// back to elimination.
inline FpCertificate eigenvalue_one_certificate(const FpMat3& m) {
  detail::require_special_orthogonal(m);
  const FpMat3 eye = identity_like(m(0, 0));
  if (m == eye) throw Error(ErrorKind::IdentityInput, "every vector is fixed");
  const FpMat3 shifted = m - eye;
  if (!det3(shifted).is_zero()) {
    // unreachable for SO_3(Z_p)
    throw Error(ErrorKind::RankDeficient, "det(m - I) != 0");
  }
  for (const FpVec3& row : rank2_kernel_rows(shifted)) {
    if (!is_zero(row)) return {canonical_scaling(row), KernelPath::Cofactor};
  }
  const auto basis = kernel_basis_fp(shifted);
  return {canonical_scaling(basis.front()), KernelPath::Elimination};
}

/// All (a, b) with a^2 + b^2 = 1 mod p, sorted.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> circle_solutions(std::uint64_t p) {
  if (p >= 1000000) throw Error(ErrorKind::ModulusTooLarge, "enumeration bound is p < 10^6");
  check_modulus(p);
  std::vector<long long> root(p, -1);
  for (std::uint64_t b = 0; b < p; ++b) {
    const std::uint64_t sq = b * b % p;
    if (root[sq] < 0) root[sq] = static_cast<long long>(b);
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t a = 0; a < p; ++a) {
    const std::uint64_t t = (1 + p - a * a % p) % p;
    if (root[t] < 0) continue;
    const auto r = static_cast<std::uint64_t>(root[t]);
    out.emplace_back(a, r);
    if (r != 0) out.emplace_back(a, p - r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Plane rotation [[a, b], [-b, a]] acting on the two coordinates other
/// than `fixed_axis`; the fixed coordinate gets a 1.
inline FpMat3 planar_rotation_embed(Fp a, Fp b, Index fixed_axis) {
  const Fp one = ScalarOps<Fp>::one(a);
  const Fp zero = ScalarOps<Fp>::zero(a);
  if (!(a * a + b * b == one)) throw Error(ErrorKind::NotOnCircle, "a^2 + b^2 != 1");
  switch (fixed_axis) {
    case Index::one:
      return {{{{one, zero, zero}, {zero, a, b}, {zero, -b, a}}}};
    case Index::two:
      return {{{{a, zero, b}, {zero, one, zero}, {-b, zero, a}}}};
    case Index::three:
      break;
  }
  return {{{{a, b, zero}, {-b, a, zero}, {zero, zero, one}}}};
}

}  // namespace rotaxis
