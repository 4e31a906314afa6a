#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "teleped/kinematics.hpp"
#include "test_util.hpp"

using namespace teleped;

namespace {
constexpr double kPi = std::numbers::pi;
const KinematicChain<double> kChain;
const JointLimits<double> kLimits = JointLimits<double>::standard();
}  // namespace

TEST_CASE("dh_transform: zero row is the identity") {
  const DhRow<double> row{0, 0, 0, 0, JointKind::Fixed};
  const auto t = dh_transform(row);
  CHECK((t.rotation - Mat3d::Identity()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(t.translation.norm() == 0.0);
}

TEST_CASE("dh_transform: base row is a pure x-axis quarter turn") {
  const auto t = dh_transform(kChain.rows()[0]);
  Mat3d expected;
  expected << 1, 0, 0,
              0, 0, 1,
              0, -1, 0;  // R_x(-pi/2)
  CHECK((t.rotation - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(t.translation.norm() == 0.0);
}

TEST_CASE("dh_transform: prismatic row translates along local z") {
  const auto t = dh_transform(kChain.rows()[2], 0.05);
  CHECK((t.rotation - Mat3d::Identity()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(t.translation.x() == 0.0);
  CHECK(t.translation.y() == 0.0);
  CHECK(t.translation.z() == doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("dh_transform: elbow row at zero and at 0.3 rad") {
  const auto& row = kChain.rows()[4];
  const auto t0 = dh_transform(row, 0.0);
  Mat3d r0;
  r0 << 1, 0, 0,
        0, 0, 1,
        0, -1, 0;
  CHECK((t0.rotation - r0).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(t0.translation.x() == doctest::Approx(-0.046).epsilon(1e-14));
  CHECK(t0.translation.y() == doctest::Approx(0.0).scale(1).epsilon(1e-14));
  CHECK(t0.translation.z() == doctest::Approx(0.170).epsilon(1e-14));

  const auto t1 = dh_transform(row, 0.3);
  CHECK(t1.rotation(0, 0) == doctest::Approx(0.95533648912560598).epsilon(1e-14));
  CHECK(t1.rotation(1, 0) == doctest::Approx(0.29552020666133955).epsilon(1e-14));
  CHECK(t1.translation.x() == doctest::Approx(-0.043945478499777875).epsilon(1e-13));
  CHECK(t1.translation.y() == doctest::Approx(-0.013593929506421619).epsilon(1e-13));
  CHECK(t1.translation.z() == doctest::Approx(0.170).epsilon(1e-14));
}

TEST_CASE("dh_transform: non-finite joint value is rejected") {
  CHECK_THROWS_AS(dh_transform(kChain.rows()[1], std::numeric_limits<double>::quiet_NaN()),
                  std::domain_error);
  CHECK_THROWS_AS(dh_transform(kChain.rows()[4], std::numeric_limits<double>::infinity()),
                  std::domain_error);
}

TEST_CASE("forward_kinematics: home pose tip and intermediate frames") {
  const auto frames = forward_kinematics(kChain, PlatformJoints<double>{});
  const Vec3d tip = frames.back().translation;
  CHECK(tip.x() == doctest::Approx(0.0).scale(1).epsilon(1e-15));
  CHECK(tip.y() == doctest::Approx(0.300).epsilon(1e-15));
  CHECK(tip.z() == doctest::Approx(0.283).epsilon(1e-15));

  // Frame 3 sits above the slide stage, frame 4 at the elbow axis.
  CHECK(frames[3].translation.x() == doctest::Approx(0.170).epsilon(1e-14));
  CHECK(frames[3].translation.z() == doctest::Approx(0.243).epsilon(1e-14));
  CHECK(frames[4].translation.x() == doctest::Approx(0.0).scale(1).epsilon(1e-14));
  CHECK(frames[4].translation.z() == doctest::Approx(0.197).epsilon(1e-14));
}

TEST_CASE("forward_kinematics: rotations stay orthonormal over random draws") {
  std::mt19937_64 rng(42);
  for (int n = 0; n < 50; ++n) {
    const auto q = testutil::random_joints(rng, kLimits);
    for (const auto& f : forward_kinematics(kChain, q)) {
      const Mat3d gram = f.rotation.transpose() * f.rotation;
      CHECK((gram - Mat3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(f.rotation.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("tip_position: slides shift the tip one-to-one") {
  const Vec3d tip = tip_position(kChain, {0.1, 0.05, 0, 0, 0});
  CHECK(tip.x() == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(tip.y() == doctest::Approx(0.40).epsilon(1e-14));
  CHECK(tip.z() == doctest::Approx(0.283).epsilon(1e-14));

  // Linearity holds at any posture, not just home.
  std::mt19937_64 rng(7);
  const auto q = testutil::random_joints(rng, kLimits);
  auto shifted = q;
  shifted.d1 += 0.01;
  shifted.d2 -= 0.02;
  const Vec3d delta = tip_position(kChain, shifted) - tip_position(kChain, q);
  CHECK(delta.x() == doctest::Approx(-0.02).epsilon(1e-12));
  CHECK(delta.y() == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(delta.z() == doctest::Approx(0.0).scale(1).epsilon(1e-12));
}

TEST_CASE("closed_form_tip: yaw quarter-ish rotation matches frozen values") {
  const Vec3d tip = closed_form_tip(kChain, {0, 0, 0, 0, kPi / 4});
  CHECK(tip.x() == doctest::Approx(-0.2121320343559642).epsilon(1e-14));
  CHECK(tip.y() == doctest::Approx(0.21213203435596431).epsilon(1e-14));
  CHECK(tip.z() == doctest::Approx(0.283).epsilon(1e-14));
}

TEST_CASE("closed_form_tip: general posture matches frozen values") {
  const PlatformJoints<double> q{0.05, -0.08, 20 * kPi / 180, 15 * kPi / 180, -30 * kPi / 180};
  const Vec3d tip = closed_form_tip(kChain, q);
  CHECK(tip.x() == doctest::Approx(0.087147311822177026).epsilon(1e-13));
  CHECK(tip.y() == doctest::Approx(0.29353966247786917).epsilon(1e-13));
  CHECK(tip.z() == doctest::Approx(0.1524930575281587).epsilon(1e-13));
}

TEST_CASE("closed_form_tip agrees with the matrix product over the joint box") {
  std::mt19937_64 rng(1234);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const auto q = testutil::random_joints(rng, kLimits);
    const double err = (closed_form_tip(kChain, q) - tip_position(kChain, q)).cwiseAbs().maxCoeff();
    worst = std::max(worst, err);
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("closed_form_tip: rejects non-finite joints") {
  PlatformJoints<double> q{};
  q.phi = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(closed_form_tip(kChain, q), std::domain_error);
  CHECK_THROWS_AS(tip_position(kChain, q), std::domain_error);
  CHECK_THROWS_AS(forward_kinematics(kChain, q), std::domain_error);
  CHECK_THROWS_AS(translational_jacobian(kChain, q), std::domain_error);
}

TEST_CASE("translational_jacobian: home-pose columns") {
  const Mat35d jac = translational_jacobian(kChain, PlatformJoints<double>{});
  Mat35d expected;
  expected << 0, 1, 0, 0.086, -0.3,
              1, 0, 0.04, 0, 0,
              0, 0, -0.3, 0, 0;
  CHECK((jac - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("translational_jacobian: general posture matches frozen values") {
  const PlatformJoints<double> q{0.05, -0.08, 20 * kPi / 180, 15 * kPi / 180, -30 * kPi / 180};
  const Mat35d jac = translational_jacobian(kChain, q);
  Mat35d expected;
  expected << 0, 1, 0, 0.044246764308031317, -0.25095489075699362,
              1, 0, -0.090506942496126896, -0.05716774775788025, 0.16395240803879219,
              0, 0, -0.24353966246448699, -0.15706709571849942, 0.011884880163348654;
  // Frozen from an independent central-difference evaluation (step 1e-7).
  CHECK((jac - expected).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("translational_jacobian matches central differences over random draws") {
  std::mt19937_64 rng(99);
  const double h = 1e-6;
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const auto q = testutil::random_joints(rng, kLimits);
    const Mat35d jac = translational_jacobian(kChain, q);
    for (int j = 0; j < 5; ++j) {
      Vec5d vp = q.vector();
      Vec5d vm = q.vector();
      vp[j] += h;
      vm[j] -= h;
      const Vec3d col = (closed_form_tip(kChain, PlatformJoints<double>::from_vector(vp)) -
                         closed_form_tip(kChain, PlatformJoints<double>::from_vector(vm))) /
                        (2 * h);
      worst = std::max(worst, (jac.col(j) - col).cwiseAbs().maxCoeff());
    }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("translational_jacobian: slide columns are posture independent") {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 20; ++n) {
    const Mat35d jac = translational_jacobian(kChain, testutil::random_joints(rng, kLimits));
    CHECK(jac.col(0).isApprox(Vec3d(0, 1, 0), 1e-15));
    CHECK(jac.col(1).isApprox(Vec3d(1, 0, 0), 1e-15));
  }
}

TEST_CASE("joint limits: contains, clamp and validate") {
  CHECK(kLimits.contains(PlatformJoints<double>{}));
  CHECK(kLimits.contains({0.175, -0.1465, 0, 0, 0}));  // boundary is inside

  const PlatformJoints<double> outside{0.2, 0, 0, -1.0, 0};
  CHECK_FALSE(kLimits.contains(outside));
  const auto clamped = kLimits.clamp(outside);
  CHECK(clamped.d1 == doctest::Approx(0.175));
  CHECK(clamped.phi == doctest::Approx(-25 * kPi / 180));
  CHECK(clamped.theta == 0.0);
  CHECK(kLimits.contains(clamped));

  CHECK_THROWS_AS(kLimits.validate(outside), std::domain_error);
  CHECK_NOTHROW(kLimits.validate(clamped));
  PlatformJoints<double> nan_q{};
  nan_q.d2 = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(kLimits.validate(nan_q), std::domain_error);
}

TEST_CASE("rigid transforms compose like homogeneous matrices") {
  std::mt19937_64 rng(11);
  const auto qa = testutil::random_joints(rng, kLimits);
  const auto frames = forward_kinematics(kChain, qa);
  // (0T7) applied to a point equals chaining the row transforms by hand.
  const Vec3d p(0.01, -0.02, 0.03);
  RigidTransform<double> acc;
  const auto values = kChain.row_values(qa);
  for (int i = 0; i < KinematicChain<double>::kRowCount; ++i) {
    acc = acc * dh_transform(kChain.rows()[static_cast<std::size_t>(i)],
                             values[static_cast<std::size_t>(i)]);
  }
  CHECK((frames.back().apply(p) - acc.apply(p)).norm() < 1e-15);
}
