#include "teleped/arm.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <stdexcept>

namespace teleped {

void DampingSpec::validate() const {
  if (!(lambda1 > 0) || !(lambda2 > 0) || !(lambda3 > 0)) {
    throw std::domain_error("damping eigenvalues must be positive");
  }
}

Vec3d ds_desired_velocity(const Vec3d& master_pos, const Vec3d& arm_pos, const Mat3d& upsilon) {
  if (!master_pos.allFinite() || !arm_pos.allFinite()) {
    throw std::domain_error("ds_desired_velocity: inputs must be finite");
  }
  return upsilon * master_pos - arm_pos;
}

Mat3d damping_basis(const Vec3d& desired_velocity, const Mat3d& previous, double tol) {
  const double speed = desired_velocity.norm();
  if (!std::isfinite(speed)) {
    throw std::domain_error("damping_basis: desired velocity must be finite");
  }
  if (speed < tol) {
    return previous;
  }
  const Vec3d v = desired_velocity / speed;
  int weakest = 0;
  v.cwiseAbs().minCoeff(&weakest);
  Vec3d u = Vec3d::Unit(weakest);
  u -= v * v.dot(u);
  u.normalize();
  Mat3d basis;
  basis.col(0) = v;
  basis.col(1) = u;
  basis.col(2) = v.cross(u);
  return basis;
}

Mat3d damping_matrix_from_basis(const Mat3d& basis, const DampingSpec& spec) {
  spec.validate();
  const Vec3d eig(spec.lambda1, spec.lambda2, spec.lambda3);
  return basis * eig.asDiagonal() * basis.transpose();
}

Mat3d damping_matrix(const Vec3d& desired_velocity, const DampingSpec& spec, const Mat3d& previous) {
  return damping_matrix_from_basis(damping_basis(desired_velocity, previous), spec);
}

Vec3d impedance_control_force(const Mat3d& damping, const Vec3d& x_dot_desired,
                              const Vec3d& x_dot, const ArmParams& params) {
  return damping * (x_dot_desired - x_dot) - params.mass * params.gravity;
}

Vec3d orientation_error(const Mat3d& orientation, const Mat3d& orientation_desired) {
  const Mat3d to_go = orientation_desired * orientation.transpose();
  Eigen::Quaterniond q(to_go);
  q.normalize();
  if (q.w() < 0) {
    q.coeffs() = -q.coeffs();
  }
  const Vec3d vec(q.x(), q.y(), q.z());
  const double vec_norm = vec.norm();
  if (vec_norm < 1e-10) {
    return 2.0 * vec;  // small-angle: sin(theta/2)*axis ~ theta/2 * axis
  }
  const double angle = 2.0 * std::atan2(vec_norm, q.w());
  Vec3d axis = vec / vec_norm;
  if (std::abs(q.w()) < 1e-8) {
    // Half turn: both axis signs describe the same rotation; pick the one
    // whose largest-magnitude component is positive.
    int dominant = 0;
    axis.cwiseAbs().maxCoeff(&dominant);
    if (axis[dominant] < 0) {
      axis = -axis;
    }
  }
  return angle * axis;
}

Vec3d orientation_pd_torque(const Vec3d& error, const Vec3d& omega, double kp, double kd) {
  if (!(kp >= 0) || !(kd >= 0)) {
    throw std::domain_error("orientation_pd_torque: gains must be non-negative");
  }
  return kp * error - kd * omega;
}

ArmState arm_step(const ArmParams& params, const ArmState& state, const Vec3d& control_force,
                  const Vec3d& external_force, const Vec3d& control_torque, double t, double dt) {
  if (!(dt > 0)) {
    throw std::domain_error("arm_step: dt must be positive");
  }
  if (!(params.mass > 0) || !(params.rotational_inertia > 0)) {
    throw std::domain_error("arm_step: inertias must be positive");
  }
  ArmState next = state;

  const Vec3d accel = (control_force + external_force) / params.mass + params.gravity;
  next.x_dot = state.x_dot + dt * accel;
  next.x = state.x + dt * next.x_dot;

  next.omega = state.omega + dt * control_torque / params.rotational_inertia;
  const double turn = next.omega.norm() * dt;
  if (turn > 0) {
    const Eigen::AngleAxisd incr(turn, next.omega.normalized());
    Eigen::Quaterniond q = Eigen::Quaterniond(incr) * Eigen::Quaterniond(state.orientation);
    q.normalize();
    next.orientation = q.toRotationMatrix();
  }

  if (!next.x.allFinite() || !next.x_dot.allFinite() || !next.omega.allFinite() ||
      !next.orientation.allFinite()) {
    throw SimulationFault("arm", t, "state became non-finite");
  }
  return next;
}

}  // namespace teleped
