#pragma once

#include <array>

#include "teleped/kinematics.hpp"
#include "teleped/trajectory.hpp"

namespace teleped {

/// Physical and drive-train parameters of the foot platform.  Two factory
/// configurations: hardware() mirrors the built device (slides and pitch
/// driven, roll/yaw passive and brake-locked, actuator effort capped at the
/// drive peaks), ideal() drives every axis without caps, which is the
/// configuration used when studying the control laws themselves.
struct PlatformParams {
  KinematicChain<double> chain{};
  JointLimits<double> limits = JointLimits<double>::standard();

  /// Diagonal joint-space inertia: kg for the slides, kg*m^2 for the gimbal.
  Vec5d joint_inertia{3.0, 3.0, 0.05, 0.05, 0.05};
  /// Constant joint-space gravity load; zero for the balanced mechanism.
  Vec5d gravity_load = Vec5d::Zero();

  double k_tau = 0.1;             ///< motor torque constant, N*m/A (placeholder)
  double pulley_radius = 0.00915; ///< slide cable drum radius, m
  double elbow_gear_ratio = 4.47; ///< pitch axis reduction

  std::array<bool, 5> actuated{true, true, true, false, false};
  /// Peak actuator effort per joint (N for slides, N*m for pitch); the
  /// passive axes have none.
  Vec5d torque_cap{45.3, 45.3, 1.923, 0.0, 0.0};
  bool apply_caps = true;

  static PlatformParams hardware() { return PlatformParams{}; }

  static PlatformParams ideal() {
    PlatformParams p;
    p.actuated = {true, true, true, true, true};
    p.apply_caps = false;
    return p;
  }
};

struct PlatformState {
  PlatformJoints<double> q{};
  Vec5d q_dot = Vec5d::Zero();
  /// Acceleration realized on the previous step, available to the controller
  /// as a (delayed) estimate.
  Vec5d q_ddot_prev = Vec5d::Zero();
  /// Tip-space projection of the foot's drive torques, i.e. the interaction
  /// force the operator is currently applying.
  Vec3d tip_force = Vec3d::Zero();
};

/// Spring-damper foot servoing a joint-space reference trajectory; the
/// operator abstraction that closes the master loop in simulation.
struct HumanFootModel {
  JointTrajectory reference;
  Vec5d stiffness{2000, 2000, 50, 50, 50};
  Vec5d damping{150, 150, 3, 3, 3};

  Vec5d drive_torque(double t, const PlatformJoints<double>& q, const Vec5d& q_dot) const;
};

/// Actuator torques for force reflection: cancel the (estimated) inertial
/// load, add the gravity model, and map the desired tip force through the
/// transposed Jacobian.  Unactuated axes deliver zero; actuated axes are
/// saturated at their drive peaks when caps are enabled.
Vec5d platform_inverse_dynamics(const PlatformParams& params, const PlatformJoints<double>& q,
                                const Vec5d& q_ddot_est, const Vec3d& tip_force_desired);

/// Motor current for a commanded joint effort.  Slides act through the cable
/// drum (force = motor torque / radius), the pitch axis through its gear.
/// Passive axes have no motor: requesting a conversion is a domain error.
double torque_to_current(const PlatformParams& params, int joint_index, double torque);
double current_to_torque(const PlatformParams& params, int joint_index, double current);

/// One semi-implicit Euler step of the joint-space dynamics driven by the
/// foot model against the actuator torques.  Joint limits clamp position and
/// zero only the offending velocity component.  Also refreshes the measured
/// tip force (pseudo-inverse-transposed projection of the foot's torques).
PlatformState platform_step(const PlatformParams& params, const PlatformState& state,
                            const HumanFootModel& human, const Vec5d& tau_actuator,
                            double t, double dt);

}  // namespace teleped
