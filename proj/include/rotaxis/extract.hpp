#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "rotaxis/axis_vectors.hpp"
#include "rotaxis/cofactor_kernel.hpp"
#include "rotaxis/error.hpp"
#include "rotaxis/linalg.hpp"
#include "rotaxis/resolvent.hpp"

namespace rotaxis {

enum class Method {
  Auto,
  V,
  U,
  W,  // best-conditioned of W1..W3
  W1,
  W2,
  W3,
  Degenerate,  // whichever degenerate branch applies
  DegeneratePair,
  DegenerateColumn,
  Cofactor,
  Resolvent,
};

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::Auto: return "AUTO";
    case Method::V: return "V";
    case Method::U: return "U";
    case Method::W: return "W";
    case Method::W1: return "W1";
    case Method::W2: return "W2";
    case Method::W3: return "W3";
    case Method::Degenerate: return "DEGENERATE";
    case Method::DegeneratePair: return "DEGENERATE_PAIR";
    case Method::DegenerateColumn: return "DEGENERATE_COLUMN";
    case Method::Cofactor: return "COFACTOR";
    case Method::Resolvent: return "RESOLVENT";
  }
  return "?";
}

struct EigenReport {
  Vec3d axis;           // unit, right-hand oriented
  double angle = 0.0;   // radians in [0, pi], of the proper part det(A) * A
  int eigenvalue = 1;   // det(A)
  Method method = Method::Auto;
  double residual = 0.0;  // ||A axis - eigenvalue axis||_inf
};

/// Rotation angle of det(A) * A in [0, pi]; atan2 keeps precision near 0 and pi.
inline double rotation_angle(const OrthogonalMatrix& a) {
  const Mat3d b = proper_part(a);
  return std::atan2(0.5 * norm2(u_formula(b)), 0.5 * (trace(b) - 1.0));
}

/// W_i whose leading entry |c + a_ii - a_jj - a_kk| is largest (lowest index on ties).
inline Index best_w_index(const OrthogonalMatrix& a) {
  Index best = Index::one;
  double best_val = -1.0;
  for (Index i : kIndices) {
    const double v = std::abs(vector_w(a, i)[pos(i)]);
    if (v > best_val) {
      best = i;
      best_val = v;
    }
  }
  return best;
}

inline Method w_method(Index i) {
  return i == Index::one ? Method::W1 : (i == Index::two ? Method::W2 : Method::W3);
}

/// Eigenvector of the eigenvalue det(A).
///
/// AUTO takes U when ||U||_inf > tol::kSymmetric and otherwise (A symmetric,
/// angle pi) the best-conditioned W_i. Small angles keep U even when it is
/// below tol::kSymmetric: W_i is pure rounding there. V is never chosen automatically.
/// AUTO reports its residual as is. Forcing a method that does not apply
/// (vanishing vector, wrong branch, or a residual above 1e-9) throws
/// MethodInapplicable; forcing V with a zero
/// denominator throws DegenerateDenominator.
inline EigenReport extract_axis(const OrthogonalMatrix& a, Method method = Method::Auto) {
  if (is_identity_like(a)) {
    throw Error(ErrorKind::IdentityInput, "every vector is fixed");
  }
  const Mat3d b = proper_part(a);
  auto inapplicable = [&](const std::string& why) {
    return Error(ErrorKind::MethodInapplicable, std::string(to_string(method)) + ": " + why);
  };

  Vec3d raw{};
  Method used = method;
  switch (method) {
    case Method::Auto: {
      const Vec3d u = vector_u(a);
      if (norm_inf(u) > tol::kSymmetric || trace(b) > 1.0) {
        raw = u;
        used = Method::U;
      } else {
        const Index i = best_w_index(a);
        raw = vector_w(a, i);
        used = w_method(i);
      }
      break;
    }
    case Method::V:
      raw = vector_v(a);
      break;
    case Method::U:
      raw = vector_u(a);
      if (norm_inf(raw) <= tol::kSymmetric) throw inapplicable("U vanishes (symmetric matrix)");
      break;
    case Method::W: {
      const Index i = best_w_index(a);
      raw = vector_w(a, i);
      used = w_method(i);
      break;
    }
    case Method::W1:
    case Method::W2:
    case Method::W3: {
      const Index i = method == Method::W1 ? Index::one : (method == Method::W2 ? Index::two : Index::three);
      raw = vector_w(a, i);
      if (norm_inf(raw) <= tol::kDegenerate) throw inapplicable("vector vanishes");
      break;
    }
    case Method::Degenerate:
    case Method::DegeneratePair:
    case Method::DegenerateColumn: {
      DegenerateAxis d;
      try {
        d = degenerate_axis(a);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::IdentityInput) throw;
        throw inapplicable(e.what());
      }
      const Method branch =
          d.branch == DegenerateBranch::Pair ? Method::DegeneratePair : Method::DegenerateColumn;
      if (method != Method::Degenerate && method != branch) throw inapplicable("other branch applies");
      raw = d.axis;
      used = branch;
      break;
    }
    case Method::Cofactor:
      try {
        raw = eigvec_via_cofactors(a, static_cast<double>(a.det_sign));
      } catch (const Error& e) {
        throw inapplicable(e.what());
      }
      break;
    case Method::Resolvent: {
      const OrthogonalMatrix rot{b, a.ortho_residual, 1};
      const Mat3d p = projection_adjugate(rot).p;
      const std::array<Vec3d, 3> cols{p.col(0), p.col(1), p.col(2)};
      raw = cols[largest_row(cols)];
      break;
    }
  }

  EigenReport rep;
  rep.axis = orient_axis(normalized(raw), b);
  rep.angle = rotation_angle(a);
  rep.eigenvalue = a.det_sign;
  rep.method = used;
  rep.residual = norm_inf(a.m * rep.axis - static_cast<double>(a.det_sign) * rep.axis);
  if (method != Method::Auto && !(rep.residual <= 1e-9)) {
    throw inapplicable("eigen-residual " + format_value(rep.residual) + " above 1e-9");
  }
  return rep;
}

}  // namespace rotaxis
