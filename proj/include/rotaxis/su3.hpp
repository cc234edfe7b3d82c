#pragma once

// Eigenvectors of A in SU(3) for a known simple eigenvalue lambda, from the
// cofactor rows of A - lambda I. For unitary A with det 1 the cofactors of A
// are conj(a_ij), which gives row i of cofactor_matrix(A - lambda I) as
//
//   diagonal      conj(a_ii) + lambda^2 - lambda (a_jj + a_kk)
//   entry j != i  conj(a_ij) + lambda a_ji
//
// The literal form with unconjugated a_ij + a_ji off the diagonal (and
// a_11 - a_33 inside W_2, W_3) is kept separately so its failure can be
// measured; see su3_literal_form_discrepancy.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "rotaxis/error.hpp"
#include "rotaxis/linalg.hpp"
#include "rotaxis/random.hpp"
#include "rotaxis/resolvent.hpp"

namespace rotaxis {

struct UnitaryMatrix {
  CMat3 m;
  double unitarity_residual = 0.0;
  Complex det{1.0, 0.0};
};

inline CMat3 conj_transpose(const CMat3& m) {
  CMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = std::conj(m(j, i));
  return r;
}

inline double norm_inf(const CMat3& m) {
  double r = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r = std::max(r, std::abs(m(i, j)));
  return r;
}

inline double norm_inf(const CVec3& v) {
  return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

inline CMat3 complex_embed(const Mat3d& m) { return detail::to_complex(m); }

/// Accepts m iff max|m^H m - I| <= tol and |det m - 1| <= tol.
inline UnitaryMatrix validate_su3(const CMat3& m, double tolerance = tol::kOrthogonal) {
  const double res = norm_inf(conj_transpose(m) * m - identity_like(Complex(0.0)));
  const Complex d = det3(m);
  if (!(res <= tolerance)) {
    throw Error(ErrorKind::NotUnitary, "max|m^H m - I| = " + format_value(res), res);
  }
  if (!(std::abs(d - 1.0) <= tolerance)) {
    throw Error(ErrorKind::NotUnitary, "det differs from 1", std::abs(d - 1.0));
  }
  return {m, res, d};
}

/// Characteristic polynomial z^3 + c2 z^2 + c1 z + c0 of m. For SU(3) this
/// is z^3 - t z^2 + conj(t) z - 1 with t = trace; the coefficients are taken
/// from the matrix itself (trace, trace of the adjugate, determinant).
inline std::array<Complex, 3> char_poly(const CMat3& m) {
  return {-det3(m), trace(adjugate(m)), -trace(m)};
}

inline Complex eval_char_poly(const std::array<Complex, 3>& c, Complex z) {
  return ((z + c[2]) * z + c[1]) * z + c[0];
}

/// Roots of the characteristic cubic by Cardano's formula, each refined by
/// Newton steps while they reduce |p(z)|. Sorted by argument in (-pi, pi].
inline std::array<Complex, 3> su3_eigenvalues(const UnitaryMatrix& a) {
  const auto c = char_poly(a.m);
  const Complex b = c[2], cc = c[1], d = c[0];
  const Complex shift = -b / 3.0;
  const Complex p = cc - b * b / 3.0;
  const Complex q = 2.0 * b * b * b / 27.0 - b * cc / 3.0 + d;
  const Complex disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  const Complex u3a = -q / 2.0 + disc, u3b = -q / 2.0 - disc;
  const Complex u3 = std::abs(u3a) >= std::abs(u3b) ? u3a : u3b;
  const Complex u = std::abs(u3) == 0.0 ? Complex(0.0) : std::pow(u3, 1.0 / 3.0);
  const Complex omega(-0.5, std::sqrt(3.0) / 2.0);

  std::array<Complex, 3> roots;
  Complex uk = u;
  for (int k = 0; k < 3; ++k) {
    const Complex w = std::abs(uk) == 0.0 ? Complex(0.0) : uk - p / (3.0 * uk);
    Complex z = w + shift;
    for (int it = 0; it < 3; ++it) {
      const Complex f = eval_char_poly(c, z);
      const Complex fp = (3.0 * z + 2.0 * c[2]) * z + c[1];
      if (std::abs(fp) == 0.0) break;
      const Complex next = z - f / fp;
      if (!(std::abs(eval_char_poly(c, next)) < std::abs(f))) break;
      z = next;
    }
    roots[k] = z;
    uk *= omega;
  }
  std::sort(roots.begin(), roots.end(),
            [](Complex x, Complex y) { return std::arg(x) < std::arg(y); });
  return roots;
}

/// ||A w - lambda w||_inf / ||w||_inf.
inline double eigen_residual(const CMat3& m, Complex lambda, const CVec3& w) {
  const CVec3 r = m * w - lambda * w;
  return norm_inf(r) / norm_inf(w);
}

/// Row i of cofactor_matrix(A - lambda I), written in the entries of A.
inline CVec3 su3_w(const UnitaryMatrix& a, Complex lambda, Index which) {
  const auto roots = su3_eigenvalues(a);
  double dist = std::numeric_limits<double>::infinity();
  for (const Complex& r : roots) dist = std::min(dist, std::abs(r - lambda));
  if (!(dist <= 1e-8)) throw Error(ErrorKind::NotAnEigenvalue, "lambda is not a root", dist);

  const CMat3& m = a.m;
  const int i = pos(which), j = (i + 1) % 3, k = (i + 2) % 3;
  CVec3 w;
  w[i] = (std::conj(m(i, i)) + lambda * lambda) - lambda * (m(j, j) + m(k, k));
  w[j] = std::conj(m(i, j)) + lambda * m(j, i);
  w[k] = std::conj(m(i, k)) + lambda * m(k, i);
  if (norm_inf(w) <= 1e-12) throw Error(ErrorKind::ZeroVector, "cofactor row vanishes");
  return w;
}

/// The three vectors in literal form (unconjugated off-diagonal sums,
/// a_11 - a_33 and a_11 - a_22 in the W_2, W_3 diagonals).
inline std::array<CVec3, 3> su3_literal_form(const CMat3& m, Complex lambda) {
  const Complex l2 = lambda * lambda;
  return {CVec3{std::conj(m(0, 0)) + l2 - lambda * (m(1, 1) + m(2, 2)), std::conj(m(0, 1)) + m(1, 0),
                std::conj(m(0, 2)) + m(2, 0)},
          CVec3{m(0, 1) + m(1, 0), std::conj(m(1, 1)) + l2 - lambda * (m(0, 0) - m(2, 2)), m(1, 2) + m(2, 1)},
          CVec3{m(0, 2) + m(2, 0), m(1, 2) + m(2, 1), std::conj(m(2, 2)) + l2 - lambda * (m(0, 0) - m(1, 1))}};
}

struct LiteralFormDiscrepancy {
  std::array<double, 3> per_vector;  // relative eigen-residual, NaN for a zero vector
  double max = 0.0;                  // over the nonzero vectors
};

inline LiteralFormDiscrepancy su3_literal_form_discrepancy(const UnitaryMatrix& a, Complex lambda) {
  LiteralFormDiscrepancy out{};
  const auto ws = su3_literal_form(a.m, lambda);
  for (int i = 0; i < 3; ++i) {
    if (norm_inf(ws[i]) <= 1e-12) {
      out.per_vector[i] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    out.per_vector[i] = eigen_residual(a.m, lambda, ws[i]);
    out.max = std::max(out.max, out.per_vector[i]);
  }
  return out;
}

/// Haar sample: Gram-Schmidt on a complex Gaussian matrix gives Haar U(3);
/// dividing by a cube root of the determinant lands in SU(3).
inline UnitaryMatrix random_su3(SplitMix64& gen) {
  std::array<CVec3, 3> cols;
  for (auto& c : cols) {
    for (int i = 0; i < 3; ++i) {
      const auto [re, im] = gen.normal_pair();
      c[i] = Complex(re, im);
    }
  }
  auto inner = [](const CVec3& x, const CVec3& y) {
    return std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1] + std::conj(x[2]) * y[2];
  };
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < k; ++j) cols[k] = cols[k] - inner(cols[j], cols[k]) * cols[j];
    const double n = std::sqrt(std::real(inner(cols[k], cols[k])));
    cols[k] = Complex(1.0 / n) * cols[k];
  }
  CMat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = cols[j][i];
  const Complex phase = std::polar(1.0, -std::arg(det3(m)) / 3.0);
  m = phase * m;
  return validate_su3(m);
}

}  // namespace rotaxis
