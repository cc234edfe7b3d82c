#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rotaxis/representations.hpp"

using namespace rotaxis;

namespace {

constexpr double kPi = std::numbers::pi;
const Mat3d kRz90{{{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}}};
const Mat3d kRx90{{{{1, 0, 0}, {0, 0, -1}, {0, 1, 0}}}};
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

const std::array<double, 5> kSweep{1e-6, 0.1, kPi / 2, kPi - 1e-6, kPi};

}  // namespace

// --- quaternions ---------------------------------------------------------------------

TEST(QuatToMatrix, FixedValues) {
  EXPECT_EQ(quat_to_matrix({1, 0, 0, 0}).m, identity());
  const double h = std::sqrt(0.5);
  EXPECT_LE(norm_inf(quat_to_matrix({h, 0, 0, h}).m - kRz90), 1e-15);
  EXPECT_EQ(kind_of([] { (void)quat_to_matrix({1, 1, 0, 0}); }), ErrorKind::NotUnit);
}

TEST(QuatToMatrix, FixesVectorPart) {
  SplitMix64 g(301);
  for (int n = 0; n < 1000; ++n) {
    const auto [a, b] = g.normal_pair();
    const auto [c, d] = g.normal_pair();
    const double s = std::sqrt(a * a + b * b + c * c + d * d);
    const Quaternion q{a / s, b / s, c / s, d / s};
    const OrthogonalMatrix m = quat_to_matrix(q);
    EXPECT_LE(norm2(m.m * q.vec() - q.vec()), 1e-12);
    EXPECT_LE(m.ortho_residual, 1e-14);
  }
}

TEST(MatrixToQuat, FixedValues) {
  EXPECT_EQ(matrix_to_quat(validate_orthogonal(identity())), (Quaternion{1, 0, 0, 0}));
  const Quaternion rz = matrix_to_quat(validate_orthogonal(kRz90));
  EXPECT_NEAR(rz.a, std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(rz.d, std::sqrt(0.5), 1e-15);
  EXPECT_EQ(rz.b, 0.0);
  EXPECT_EQ(rz.c, 0.0);
  const Quaternion ht = matrix_to_quat(validate_orthogonal(kHalfTurn111));
  EXPECT_NEAR(ht.a, 0.0, 1e-15);
  for (double x : {ht.b, ht.c, ht.d}) EXPECT_NEAR(x, 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_EQ(kind_of([] { (void)matrix_to_quat(validate_orthogonal(diag(1, 1, -1))); }),
            ErrorKind::WrongDeterminant);
}

TEST(Canonical, SignConvention) {
  EXPECT_EQ(canonical({-1, 0, 0, 0}), (Quaternion{1, 0, 0, 0}));
  EXPECT_EQ(canonical({0, 0, -1, 0}), (Quaternion{0, 0, 1, 0}));
  EXPECT_EQ(canonical({0, 0, 1, -1}), (Quaternion{0, 0, 1, -1}));
}

TEST(MatrixToQuat, RoundTrip) {
  SplitMix64 g(303);
  for (double t : kSweep) {
    for (int n = 0; n < 300; ++n) {
      const OrthogonalMatrix a = random_rotation_with_angle(g, t);
      const Quaternion q = matrix_to_quat(a);
      EXPECT_GE(q.a, 0.0);
      EXPECT_LE(norm_inf(quat_to_matrix(q).m - a.m), 1e-10);
    }
  }
}

// --- exponential map -------------------------------------------------------------------

TEST(ExpSo3, FixedValues) {
  EXPECT_EQ(exp_so3({{1, 0, 0}, 0.0}).m, identity());
  EXPECT_LE(norm_inf(exp_so3({{0, 0, 1}, kPi / 2}).m - kRz90), 1e-15);
  EXPECT_EQ(kind_of([] { (void)exp_so3({{1, 1, 0}, 1.0}); }), ErrorKind::NotUnit);
}

TEST(ExpSo3, AgreesWithQuaternionMap) {
  const AxisAngle aa{normalized({1, 2, 3}), 1.0};
  EXPECT_LE(norm_inf(exp_so3(aa).m - quat_to_matrix(axis_angle_to_quat(aa)).m), 1e-12);
  SplitMix64 g(305);
  for (int n = 0; n < 1000; ++n) {
    const AxisAngle r{random_unit_vector(g), g.uniform(-2 * kPi, 2 * kPi)};
    const OrthogonalMatrix e = exp_so3(r);
    EXPECT_LE(norm_inf(e.m - quat_to_matrix(axis_angle_to_quat(r)).m), 1e-12);
    EXPECT_LE(norm2(e.m * r.axis - r.axis), 1e-14);
  }
}

TEST(LogSo3, IdentityAndImproper) {
  const AxisAngle id = log_so3(validate_orthogonal(identity()));
  EXPECT_EQ(id.angle, 0.0);
  EXPECT_EQ(kind_of([] { (void)log_so3(validate_orthogonal(diag(-1, -1, -1))); }), ErrorKind::WrongDeterminant);
}

TEST(LogSo3, RoundTrip) {
  SplitMix64 g(307);
  for (double t : kSweep) {
    for (int n = 0; n < 300; ++n) {
      const OrthogonalMatrix a = random_rotation_with_angle(g, t);
      const AxisAngle aa = log_so3(a);
      EXPECT_GE(aa.angle, 0.0);
      EXPECT_LE(aa.angle, kPi);
      EXPECT_LE(norm_inf(exp_so3(aa).m - a.m), 1e-9) << "angle " << t;
    }
  }
}

// --- Cayley ---------------------------------------------------------------------------

TEST(Cayley, FixedValues) {
  EXPECT_EQ(cayley_compose({0, 0, 0}).m, identity());
  EXPECT_EQ(cayley_compose({1, 0, 0}).m, kRx90);
  EXPECT_EQ(cayley_decompose(validate_orthogonal(identity())), (SkewParams{0, 0, 0}));
  EXPECT_EQ(cayley_decompose(validate_orthogonal(kRx90)), (SkewParams{1, 0, 0}));
  EXPECT_EQ(kind_of([] { (void)cayley_decompose(validate_orthogonal(kHalfTurn111)); }),
            ErrorKind::MinusOneEigenvalue);
}

TEST(Cayley, RationalParameters) {
  const Mat3d m = cayley_compose({1, 2, 3}).m;
  // 15 * entries are the integers 1+p^2-q^2-r^2, 2pq-2r, ... at (1,2,3)
  const Mat3d want{{{{-11, -2, 10}, {10, -5, 10}, {2, 14, 5}}}};
  EXPECT_LE(norm_inf(15.0 * m - want), 1e-14);
  EXPECT_NEAR(m(0, 1), -2.0 / 15.0, 1e-16);
}

TEST(Cayley, MatchesMatrixInverseDefinition) {
  SplitMix64 g(309);
  for (int n = 0; n < 300; ++n) {
    const SkewParams s{g.uniform(-2, 2), g.uniform(-2, 2), g.uniform(-2, 2)};
    const Eigen::Matrix3d q = oracle::to_eigen(skew_matrix(s));
    const Eigen::Matrix3d i = Eigen::Matrix3d::Identity();
    const Eigen::Matrix3d want = (i + q) * (i - q).inverse();
    const Mat3d got = cayley_compose(s).m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) EXPECT_NEAR(got(r, c), want(r, c), 1e-14);
  }
}

TEST(Cayley, FixesParametersAndVIsParallel) {
  SplitMix64 g(311);
  for (int n = 0; n < 1000; ++n) {
    const SkewParams s{g.uniform(-2, 2), g.uniform(-2, 2), g.uniform(-2, 2)};
    const OrthogonalMatrix a = cayley_compose(s);
    EXPECT_EQ(a.det_sign, 1);
    EXPECT_LE(a.ortho_residual, 1e-14);
    EXPECT_LE(norm_inf(a.m * s.vec() - s.vec()), 1e-14 * std::max(1.0, norm_inf(s.vec())));
    const double k = 1.0 + s.p * s.p + s.q * s.q + s.r * s.r;
    EXPECT_NEAR(a.m(1, 2) + a.m(2, 1), 4 * s.q * s.r / k, 1e-14);
    if (!degenerate_pairs(a.m, 1e-3).empty()) continue;
    EXPECT_LE(line_angle(vector_v(a), s.vec()), 1e-9);
  }
}

TEST(Cayley, RoundTrip) {
  SplitMix64 g(313);
  for (double t : kSweep) {
    for (int n = 0; n < 300; ++n) {
      const OrthogonalMatrix a = random_rotation_with_angle(g, t);
      if (!(1.0 + trace(a.m) > tol::kCayley)) {
        EXPECT_EQ(kind_of([&] { (void)cayley_decompose(a); }), ErrorKind::MinusOneEigenvalue);
        continue;
      }
      const SkewParams s = cayley_decompose(a);
      const Mat3d q = skew_matrix(s);
      EXPECT_EQ(q + transpose(q), Mat3d{});
      // the inverse is ill-conditioned near trace = -1; scale by |(p,q,r)|^2
      const double cond = std::max(1.0, norm_inf(s.vec()));
      EXPECT_LE(norm_inf(cayley_compose(s).m - a.m), 1e-10 * cond) << "angle " << t;
    }
  }
}

// --- reflections ---------------------------------------------------------------------------

TEST(ComposeReflections, FixedValues) {
  const ReflectionProduct r = compose_reflections(make_reflection_pair({1, 0, 0}, {0, 1, 0}));
  EXPECT_EQ(r.a.m, diag(-1, -1, 1));
  EXPECT_EQ(r.axis, (Vec3d{0, 0, 1}));

  const double h = std::sqrt(0.5);
  const ReflectionProduct s = compose_reflections(make_reflection_pair({1, 0, 0}, {h, h, 0}));
  EXPECT_NEAR(s.axis[2], h, 1e-16);
  EXPECT_LE(norm2(s.a.m * Vec3d{0, 0, 1} - Vec3d{0, 0, 1}), 1e-15);
  // two mirrors at 45 degrees compose to a quarter turn
  EXPECT_LE(norm_inf(s.a.m - rot_z(-kPi / 2)), 1e-15);

  EXPECT_EQ(kind_of([] { (void)compose_reflections(make_reflection_pair({1, 0, 0}, {1, 0, 0})); }),
            ErrorKind::ParallelReflections);
  EXPECT_EQ(kind_of([] { (void)compose_reflections(make_reflection_pair({2, 0, 0}, {0, 1, 0})); }),
            ErrorKind::NotUnit);
}

TEST(ComposeReflections, AxisFixedAndSumIdentity) {
  SplitMix64 g(317);
  for (int n = 0; n < 1000; ++n) {
    const ReflectionPair pr = make_reflection_pair(random_unit_vector(g), random_unit_vector(g));
    const ReflectionProduct r = compose_reflections(pr);
    EXPECT_LE(norm_inf(r.a.m * r.axis - r.axis), 1e-12);
    EXPECT_EQ(validate_orthogonal(r.a.m).det_sign, 1);
    EXPECT_LE(reflection_sum_identity_residual(pr), 1e-12);
  }
}

// --- sampling ---------------------------------------------------------------------------------

TEST(RandomRotation, DeterministicPerSeed) {
  EXPECT_EQ(random_rotation(42).m, random_rotation(42).m);
  EXPECT_NE(random_rotation(42).m, random_rotation(43).m);
}

TEST(RandomRotation, HaarTraceMoments) {
  // under Haar measure E[trace] = 0 and E[trace^2] = 1
  SplitMix64 g(319);
  const int n = 20000;
  double s1 = 0.0, s2 = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = trace(random_rotation(g).m);
    s1 += t;
    s2 += t * t;
  }
  EXPECT_NEAR(s1 / n, 0.0, 0.03);
  EXPECT_NEAR(s2 / n, 1.0, 0.05);
}

TEST(SplitMix64, ReferenceOutput) {
  // first outputs for seed 0 from the reference implementation
  SplitMix64 g(0);
  EXPECT_EQ(g.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(g.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(g.next(), 0x06c45d188009454fULL);
}
