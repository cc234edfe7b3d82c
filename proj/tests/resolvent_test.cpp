#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rotaxis/representations.hpp"
#include "rotaxis/resolvent.hpp"

using namespace rotaxis;

namespace {

constexpr double kPi = std::numbers::pi;
const Mat3d kRz90{{{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}}};
const Mat3d kHalfTurn111 = (1.0 / 3.0) * Mat3d{{{{-1, 2, 2}, {2, -1, 2}, {2, 2, -1}}}};

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no exception";
  return ErrorKind::InvalidArgument;
}

// u u^T for the unit axis returned by Eigen's eigensolver
Mat3d oracle_projection(const Mat3d& a) {
  const Vec3d u = oracle::eigensolver_axis(a, 1.0);
  Mat3d p;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p(i, j) = u[i] * u[j];
  return p;
}

}  // namespace

TEST(ComplexEigenvalue, FixedValues) {
  const Complex l = complex_eigenvalue(validate_orthogonal(kRz90));
  EXPECT_NEAR(l.real(), 0.0, 1e-16);
  EXPECT_NEAR(l.imag(), 1.0, 1e-16);
  const Complex h = complex_eigenvalue(validate_orthogonal(kHalfTurn111));
  EXPECT_NEAR(h.real(), -1.0, 1e-16);
  EXPECT_EQ(kind_of([] { (void)complex_eigenvalue(validate_orthogonal(identity())); }), ErrorKind::IdentityInput);
}

TEST(ProjectionAdjugate, FixedValues) {
  const ProjectionReport rz = projection_adjugate(validate_orthogonal(kRz90));
  EXPECT_EQ(rz.p, diag(0, 0, 1));
  EXPECT_EQ(rz.method, ProjectionMethod::Adjugate);

  const ProjectionReport ht = projection_adjugate(validate_orthogonal(kHalfTurn111));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(ht.p(i, j), 1.0 / 3.0, 1e-15);
}

TEST(ProjectionAdjugate, ErrorPaths) {
  EXPECT_EQ(kind_of([] { (void)projection_adjugate(validate_orthogonal(identity())); }), ErrorKind::IdentityInput);
  EXPECT_EQ(kind_of([] { (void)projection_adjugate(validate_orthogonal(diag(1, 1, -1))); }),
            ErrorKind::WrongDeterminant);
}

TEST(ProjectionAdjugate, ProjectionPropertiesOnHaarSamples) {
  SplitMix64 g(401);
  for (int n = 0; n < 1000; ++n) {
    const OrthogonalMatrix a = random_rotation(g);
    const Mat3d p = projection_adjugate(a).p;
    EXPECT_LE(norm_inf(p * p - p), 1e-12);
    EXPECT_LE(norm_inf(a.m * p - p), 1e-10);
    EXPECT_LE(norm_inf(p * a.m - p), 1e-10);
    EXPECT_LE(norm_inf(p - transpose(p)), 1e-12);
    EXPECT_NEAR(trace(p), 1.0, 1e-12);
    EXPECT_LE(norm_inf(p - oracle_projection(a.m)), 1e-9);
    for (Index i : kIndices) {
      const Vec3d w = vector_w(a, i);
      if (norm_inf(w) <= 1e-6) continue;
      Vec3d e{0, 0, 0};
      e[pos(i)] = 1;
      EXPECT_LE(line_angle(p * e, w), 1e-9);
    }
  }
}

TEST(ProjectionAdjugate, SmallAngles) {
  SplitMix64 g(403);
  for (double t : {1e-7, 1e-5, 1e-3}) {
    for (int n = 0; n < 100; ++n) {
      const Vec3d u = random_unit_vector(g);
      const Mat3d p = projection_adjugate(exp_so3({u, t})).p;
      Mat3d want;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) want(i, j) = u[i] * u[j];
      // adj(I - A) and 3 - trace are both O(t^2); the ratio keeps ~1e-16/t^2 accuracy at worst
      EXPECT_LE(norm_inf(p - want), 1e-16 / (t * t) + 1e-12) << "angle " << t;
    }
  }
}

TEST(ProjectionContour, QuarterTurn) {
  const ProjectionReport r = projection_contour(validate_orthogonal(kRz90), 256);
  EXPECT_LE(norm_inf(r.p - diag(0, 0, 1)), 1e-10);
  EXPECT_LE(r.imag_residual, 1e-8);
  EXPECT_EQ(r.method, ProjectionMethod::Contour);
}

TEST(ProjectionContour, ErrorPaths) {
  const OrthogonalMatrix rz = validate_orthogonal(kRz90);
  EXPECT_EQ(kind_of([] { (void)projection_contour(validate_orthogonal(identity())); }), ErrorKind::IdentityInput);
  EXPECT_EQ(kind_of([] { (void)projection_contour(validate_orthogonal(rot_x(1e-7))); }),
            ErrorKind::EigenvalueTooClose);
  EXPECT_EQ(kind_of([&] { (void)projection_contour(rz, 8); }), ErrorKind::InvalidArgument);
  // |1 - i| = sqrt(2): the circle must not reach the other eigenvalues
  EXPECT_EQ(kind_of([&] { (void)projection_contour(rz, 64, 1.5); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([&] { (void)projection_contour(rz, 64, 0.0); }), ErrorKind::InvalidArgument);
}

TEST(ProjectionContour, MatchesAdjugate) {
  SplitMix64 g(405);
  for (int n = 0; n < 300; ++n) {
    const OrthogonalMatrix a = random_rotation(g);
    if (eigenvalue_separation(a) <= 1e-3) continue;
    const ProjectionReport c = projection_contour(a, 256);
    EXPECT_LE(norm_inf(c.p - projection_adjugate(a).p), 1e-8);
    EXPECT_LE(c.imag_residual, 1e-8);
    EXPECT_LE(norm_inf(a.m * c.p - c.p), 1e-10);
  }
}

TEST(ProjectionContour, ConvergesGeometrically) {
  SplitMix64 g(407);
  for (int n = 0; n < 200; ++n) {
    const OrthogonalMatrix a = random_rotation_with_angle(g, g.uniform(0.2, kPi));
    const Mat3d exact = projection_adjugate(a).p;
    const double sep = eigenvalue_separation(a);
    auto err = [&](int nodes, std::optional<double> radius) {
      return norm_inf(projection_contour(a, nodes, radius).p - exact);
    };
    // default radius halves the distance to the poles: error ~ 2^-n
    EXPECT_GE(err(16, std::nullopt), 10.0 * err(32, std::nullopt));
    // a wider circle converges more slowly, so 64 -> 128 stays above rounding
    const double e64 = err(64, 0.8 * sep), e128 = err(128, 0.8 * sep);
    EXPECT_GE(e64, 10.0 * e128);
  }
}
