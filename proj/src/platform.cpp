#include "teleped/platform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace teleped {

namespace {

/// Tip-frame projection of joint torques through the right pseudo-inverse:
/// F = (J^+)^T tau = (J J^T)^{-1} J tau.  The chain keeps rank 3 throughout
/// its mechanical range; a vanishing Gram determinant means the caller left
/// that envelope.
Vec3d project_tip_force(const KinematicChain<double>& chain, const PlatformJoints<double>& q,
                        const Vec5d& tau) {
  const Mat35d jac = translational_jacobian(chain, q);
  const Mat3d gram = jac * jac.transpose();
  if (std::abs(gram.determinant()) < 1e-12) {
    throw std::domain_error("platform tip force projection: Jacobian lost rank");
  }
  return gram.ldlt().solve(jac * tau);
}

}  // namespace

Vec5d HumanFootModel::drive_torque(double t, const PlatformJoints<double>& q,
                                   const Vec5d& q_dot) const {
  const JointTrajectory::Sample ref = reference.sample(t);
  return stiffness.cwiseProduct(ref.position - q.vector()) +
         damping.cwiseProduct(ref.velocity - q_dot);
}

Vec5d platform_inverse_dynamics(const PlatformParams& params, const PlatformJoints<double>& q,
                                const Vec5d& q_ddot_est, const Vec3d& tip_force_desired) {
  if (!q_ddot_est.allFinite() || !tip_force_desired.allFinite()) {
    throw std::domain_error("platform_inverse_dynamics: inputs must be finite");
  }
  const Mat35d jac = translational_jacobian(params.chain, q);
  Vec5d tau = -params.joint_inertia.cwiseProduct(q_ddot_est) + params.gravity_load +
              jac.transpose() * tip_force_desired;
  for (int i = 0; i < 5; ++i) {
    if (!params.actuated[static_cast<std::size_t>(i)]) {
      tau[i] = 0;
    } else if (params.apply_caps) {
      tau[i] = std::clamp(tau[i], -params.torque_cap[i], params.torque_cap[i]);
    }
  }
  return tau;
}

double torque_to_current(const PlatformParams& params, int joint_index, double torque) {
  if (joint_index < 0 || joint_index >= 5) {
    throw std::domain_error("torque_to_current: joint index out of range");
  }
  if (!params.actuated[static_cast<std::size_t>(joint_index)]) {
    throw std::domain_error("torque_to_current: joint has no actuator");
  }
  const double ratio =
      joint_index < 2 ? 1.0 / params.pulley_radius : params.elbow_gear_ratio;
  return torque / (params.k_tau * ratio);
}

double current_to_torque(const PlatformParams& params, int joint_index, double current) {
  if (joint_index < 0 || joint_index >= 5) {
    throw std::domain_error("current_to_torque: joint index out of range");
  }
  if (!params.actuated[static_cast<std::size_t>(joint_index)]) {
    throw std::domain_error("current_to_torque: joint has no actuator");
  }
  const double ratio =
      joint_index < 2 ? 1.0 / params.pulley_radius : params.elbow_gear_ratio;
  return current * params.k_tau * ratio;
}

PlatformState platform_step(const PlatformParams& params, const PlatformState& state,
                            const HumanFootModel& human, const Vec5d& tau_actuator,
                            double t, double dt) {
  if (!(dt > 0)) {
    throw std::domain_error("platform_step: dt must be positive");
  }
  if (!tau_actuator.allFinite()) {
    throw SimulationFault("platform", t, "actuator torque non-finite");
  }
  const Vec5d tau_drive = human.drive_torque(t, state.q, state.q_dot);

  PlatformState next;
  next.q_ddot_prev =
      (tau_drive - tau_actuator - params.gravity_load).cwiseQuotient(params.joint_inertia);
  if (!next.q_ddot_prev.allFinite()) {
    throw SimulationFault("platform", t, "joint acceleration non-finite");
  }
  next.q_dot = state.q_dot + dt * next.q_ddot_prev;
  Vec5d q_next = state.q.vector() + dt * next.q_dot;

  // Hard stops: clamp position and kill only the velocity component that is
  // still pushing into the violated limit.
  for (int i = 0; i < 5; ++i) {
    if (q_next[i] < params.limits.lower[i]) {
      q_next[i] = params.limits.lower[i];
      if (next.q_dot[i] < 0) next.q_dot[i] = 0;
    } else if (q_next[i] > params.limits.upper[i]) {
      q_next[i] = params.limits.upper[i];
      if (next.q_dot[i] > 0) next.q_dot[i] = 0;
    }
  }
  next.q = PlatformJoints<double>::from_vector(q_next);
  next.tip_force = project_tip_force(params.chain, state.q, tau_drive);

  if (!q_next.allFinite() || !next.q_dot.allFinite() || !next.tip_force.allFinite()) {
    throw SimulationFault("platform", t, "state became non-finite");
  }
  return next;
}

}  // namespace teleped
