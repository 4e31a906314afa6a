#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "teleped/types.hpp"

namespace teleped {

/// How a table row consumes its joint variable.  Fixed rows describe the
/// supplementary frames that reconcile the convention with the mechanism's
/// actual link arrangement; they take no variable at all.
enum class JointKind { RevoluteOnBeta, PrismaticOnD, Fixed };

/// Rotation/translation pair kept separate instead of a packed 4x4 so that
/// products stay in 3x3 arithmetic and the orthonormal part is directly
/// accessible for invariant checks.
template <typename Scalar>
struct RigidTransform {
  Mat3<Scalar> rotation = Mat3<Scalar>::Identity();
  Vec3<Scalar> translation = Vec3<Scalar>::Zero();

  RigidTransform<Scalar> operator*(const RigidTransform<Scalar>& rhs) const {
    return {rotation * rhs.rotation, rotation * rhs.translation + translation};
  }

  Vec3<Scalar> apply(const Vec3<Scalar>& point) const {
    return rotation * point + translation;
  }
};

/// One table row in the (beta, d, alpha, a) convention.  beta/d are offsets:
/// the joint variable, when present, is added on top (angle for a revolute
/// row, displacement for a prismatic row).
template <typename Scalar>
struct DhRow {
  Scalar beta_offset{0};
  Scalar d_offset{0};
  Scalar alpha{0};
  Scalar a{0};
  JointKind joint_kind{JointKind::Fixed};
};

/// Single-row transform: screw about/along local z with angle beta and
/// offset d, followed by screw about/along the rotated x with angle alpha
/// and offset a.
template <typename Scalar>
RigidTransform<Scalar> dh_transform(const DhRow<Scalar>& row, Scalar joint_value = Scalar(0)) {
  if (!std::isfinite(static_cast<double>(joint_value))) {
    throw std::domain_error("dh_transform: joint value must be finite");
  }
  Scalar beta = row.beta_offset;
  Scalar d = row.d_offset;
  switch (row.joint_kind) {
    case JointKind::RevoluteOnBeta: beta += joint_value; break;
    case JointKind::PrismaticOnD: d += joint_value; break;
    case JointKind::Fixed: break;
  }
  using std::cos;
  using std::sin;
  const Scalar cb = cos(beta), sb = sin(beta);
  const Scalar ca = cos(row.alpha), sa = sin(row.alpha);
  RigidTransform<Scalar> t;
  t.rotation << cb, -sb * ca, sb * sa,
                sb, cb * ca, -cb * sa,
                Scalar(0), sa, ca;
  t.translation << row.a * cb, row.a * sb, d;
  return t;
}

/// Joint coordinates of the five-axis platform: two horizontal slides, the
/// pitch axis theta, the roll axis phi and the yaw axis psi.  Lengths in
/// meters, angles in radians.
template <typename Scalar>
struct PlatformJoints {
  Scalar d1{0};
  Scalar d2{0};
  Scalar theta{0};
  Scalar phi{0};
  Scalar psi{0};

  Vec5<Scalar> vector() const {
    Vec5<Scalar> v;
    v << d1, d2, theta, phi, psi;
    return v;
  }

  static PlatformJoints from_vector(const Vec5<Scalar>& v) {
    return {v[0], v[1], v[2], v[3], v[4]};
  }

  bool all_finite() const {
    return vector().allFinite();
  }
};

/// Axis-aligned joint box.  standard() carries the mechanism's mechanical
/// range: slides +-0.175 m / +-0.1465 m, pitch +-80 deg, roll -25..+45 deg,
/// yaw +-45 deg.
template <typename Scalar>
struct JointLimits {
  Vec5<Scalar> lower;
  Vec5<Scalar> upper;

  static JointLimits standard() {
    constexpr Scalar deg = std::numbers::pi_v<Scalar> / Scalar(180);
    JointLimits lim;
    lim.lower << Scalar(-0.175), Scalar(-0.1465), Scalar(-80) * deg, Scalar(-25) * deg, Scalar(-45) * deg;
    lim.upper << Scalar(0.175), Scalar(0.1465), Scalar(80) * deg, Scalar(45) * deg, Scalar(45) * deg;
    return lim;
  }

  bool contains(const PlatformJoints<Scalar>& q) const {
    const Vec5<Scalar> v = q.vector();
    return (v.array() >= lower.array()).all() && (v.array() <= upper.array()).all();
  }

  PlatformJoints<Scalar> clamp(const PlatformJoints<Scalar>& q) const {
    const Vec5<Scalar> v = q.vector().cwiseMax(lower).cwiseMin(upper);
    return PlatformJoints<Scalar>::from_vector(v);
  }

  void validate(const PlatformJoints<Scalar>& q) const {
    if (!q.all_finite()) {
      throw std::domain_error("joint vector must be finite");
    }
    if (!contains(q)) {
      throw std::domain_error("joint vector outside mechanical limits");
    }
  }
};

/// Link geometry of the platform.  The two elbow offsets a3/a4 and the two
/// stacked link lengths d2_star/d3 coincide on the real mechanism; the
/// closed-form tip expression below relies on that coincidence.
template <typename Scalar>
struct ChainGeometry {
  Scalar d2_star{0.170};
  Scalar d3{0.170};
  Scalar a2_star{0.243};
  Scalar a3{0.046};
  Scalar a4{0.046};
  Scalar d5{0.040};
  Scalar a6{0.300};
};

/// The platform's nine-row chain: base frame, the two slides, two fixed
/// frames re-orienting between slide and gimbal, the three rotations, and
/// the fixed tip extension.  Geometry is immutable after construction.
template <typename Scalar>
class KinematicChain {
 public:
  static constexpr int kRowCount = 9;

  KinematicChain() : KinematicChain(ChainGeometry<Scalar>{}) {}

  explicit KinematicChain(const ChainGeometry<Scalar>& g) : geometry_(g) {
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    constexpr Scalar half_pi = pi / Scalar(2);
    rows_ = {{
        {Scalar(0), Scalar(0), -half_pi, Scalar(0), JointKind::Fixed},
        {-half_pi, Scalar(0), -half_pi, Scalar(0), JointKind::PrismaticOnD},
        {Scalar(0), Scalar(0), Scalar(0), Scalar(0), JointKind::PrismaticOnD},
        {Scalar(0), g.d2_star, pi, g.a2_star, JointKind::Fixed},
        {Scalar(0), g.d3, -half_pi, -g.a3, JointKind::RevoluteOnBeta},
        {Scalar(0), Scalar(0), -half_pi, g.a4, JointKind::RevoluteOnBeta},
        {half_pi, Scalar(0), half_pi, Scalar(0), JointKind::Fixed},
        {pi, g.d5, Scalar(0), Scalar(0), JointKind::RevoluteOnBeta},
        {Scalar(0), Scalar(0), Scalar(0), g.a6, JointKind::Fixed},
    }};
  }

  const ChainGeometry<Scalar>& geometry() const { return geometry_; }
  const std::array<DhRow<Scalar>, kRowCount>& rows() const { return rows_; }

  /// Joint value consumed by each row, in row order.
  std::array<Scalar, kRowCount> row_values(const PlatformJoints<Scalar>& q) const {
    std::array<Scalar, kRowCount> v{};
    v[1] = q.d1;
    v[2] = q.d2;
    v[4] = q.theta;
    v[5] = q.phi;
    v[7] = q.psi;
    return v;
  }

 private:
  ChainGeometry<Scalar> geometry_;
  std::array<DhRow<Scalar>, kRowCount> rows_;
};

/// Cumulative base-to-frame transforms for all nine rows; the last entry is
/// the base-to-tip pose.
template <typename Scalar>
std::array<RigidTransform<Scalar>, KinematicChain<Scalar>::kRowCount> forward_kinematics(
    const KinematicChain<Scalar>& chain, const PlatformJoints<Scalar>& q) {
  if (!q.all_finite()) {
    throw std::domain_error("forward_kinematics: joint vector must be finite");
  }
  const auto values = chain.row_values(q);
  std::array<RigidTransform<Scalar>, KinematicChain<Scalar>::kRowCount> out;
  RigidTransform<Scalar> acc;
  for (int i = 0; i < KinematicChain<Scalar>::kRowCount; ++i) {
    acc = acc * dh_transform(chain.rows()[static_cast<std::size_t>(i)], values[static_cast<std::size_t>(i)]);
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

/// Base-frame tip position from the full matrix product.
template <typename Scalar>
Vec3<Scalar> tip_position(const KinematicChain<Scalar>& chain, const PlatformJoints<Scalar>& q) {
  if (!q.all_finite()) {
    throw std::domain_error("tip_position: joint vector must be finite");
  }
  const auto values = chain.row_values(q);
  RigidTransform<Scalar> acc;
  for (int i = 0; i < KinematicChain<Scalar>::kRowCount; ++i) {
    acc = acc * dh_transform(chain.rows()[static_cast<std::size_t>(i)], values[static_cast<std::size_t>(i)]);
  }
  return acc.translation;
}

/// Closed-form tip position.  Algebraically identical to the matrix product
/// whenever a3 == a4 and d2_star == d3 (true for the standard geometry); the
/// matrix product is the authority for any other geometry.
template <typename Scalar>
Vec3<Scalar> closed_form_tip(const KinematicChain<Scalar>& chain, const PlatformJoints<Scalar>& q) {
  if (!q.all_finite()) {
    throw std::domain_error("closed_form_tip: joint vector must be finite");
  }
  using std::cos;
  using std::sin;
  const ChainGeometry<Scalar>& g = chain.geometry();
  const Scalar st = sin(q.theta), ct = cos(q.theta);
  const Scalar sp = sin(q.phi), cp = cos(q.phi);
  const Scalar ss = sin(q.psi), cs = cos(q.psi);
  Vec3<Scalar> tip;
  tip.x() = q.d2 + (g.d5 + g.a3) * sp - g.a6 * ss * cp;
  tip.y() = q.d1 + g.d5 * cp * st + g.a6 * (ct * cs + ss * st * sp) + g.a3 * st * (cp - Scalar(1));
  tip.z() = g.a2_star - g.a6 * (cs * st - ct * sp * ss) - g.a3 * ct + (g.d5 + g.a3) * ct * cp;
  return tip;
}

/// Translational Jacobian of the tip, columns ordered (d1, d2, theta, phi,
/// psi).  Analytic partial derivatives of the closed form.
template <typename Scalar>
Mat35<Scalar> translational_jacobian(const KinematicChain<Scalar>& chain, const PlatformJoints<Scalar>& q) {
  if (!q.all_finite()) {
    throw std::domain_error("translational_jacobian: joint vector must be finite");
  }
  using std::cos;
  using std::sin;
  const ChainGeometry<Scalar>& g = chain.geometry();
  const Scalar st = sin(q.theta), ct = cos(q.theta);
  const Scalar sp = sin(q.phi), cp = cos(q.phi);
  const Scalar ss = sin(q.psi), cs = cos(q.psi);
  const Scalar r = g.d5 + g.a3;

  Mat35<Scalar> jac = Mat35<Scalar>::Zero();
  // Slides act directly on y (d1) and x (d2).
  jac(1, 0) = Scalar(1);
  jac(0, 1) = Scalar(1);
  // theta column.
  jac(1, 2) = g.d5 * cp * ct + g.a6 * (ss * ct * sp - st * cs) + g.a3 * ct * (cp - Scalar(1));
  jac(2, 2) = -g.a6 * (cs * ct + st * sp * ss) + g.a3 * st - r * st * cp;
  // phi column.
  jac(0, 3) = r * cp + g.a6 * ss * sp;
  jac(1, 3) = -g.d5 * sp * st + g.a6 * ss * st * cp - g.a3 * st * sp;
  jac(2, 3) = g.a6 * ct * cp * ss - r * ct * sp;
  // psi column.
  jac(0, 4) = -g.a6 * cs * cp;
  jac(1, 4) = g.a6 * (cs * st * sp - ct * ss);
  jac(2, 4) = g.a6 * (ss * st + ct * sp * cs);
  return jac;
}

}  // namespace teleped
