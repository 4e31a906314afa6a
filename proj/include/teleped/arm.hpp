#pragma once

#include "teleped/types.hpp"

namespace teleped {

/// Point-mass translational model with an isotropic rotational inertia for
/// the tool orientation.  Gravity acts on the mass and is compensated by the
/// controller's gravity term.
struct ArmParams {
  double mass = 3.0;                ///< kg
  double rotational_inertia = 0.1;  ///< kg*m^2, isotropic
  Vec3d gravity{0, 0, -9.81};       ///< m/s^2
};

/// Eigenvalues of the variable damping matrix: lambda1 acts along the
/// desired-velocity direction, lambda2/lambda3 across it.  All must be
/// positive for the matrix to stay positive definite.
struct DampingSpec {
  double lambda1 = 60;
  double lambda2 = 90;
  double lambda3 = 90;

  void validate() const;
};

struct ArmState {
  Vec3d x = Vec3d::Zero();
  Vec3d x_dot = Vec3d::Zero();
  Mat3d orientation = Mat3d::Identity();  ///< body-to-world rotation
  Vec3d omega = Vec3d::Zero();            ///< world-frame angular velocity
  /// Last well-defined damping eigenbasis, reused while the desired velocity
  /// is too small to orient one.
  Mat3d damping_basis = Mat3d::Identity();
};

/// Linear attractor dynamics: the desired velocity points from the arm at
/// the scaled master position, so the master commands a moving equilibrium
/// rather than a raw setpoint.
Vec3d ds_desired_velocity(const Vec3d& master_pos, const Vec3d& arm_pos, const Mat3d& upsilon);

/// Orthonormal basis with the first column along the desired velocity.  The
/// cross-velocity pair is completed deterministically from the world axis
/// least aligned with the velocity; it is an arbitrary choice that only
/// matters when lambda2 != lambda3.  Below `tol` speed the previous basis is
/// kept unchanged.
Mat3d damping_basis(const Vec3d& desired_velocity, const Mat3d& previous, double tol = 1e-6);

Mat3d damping_matrix_from_basis(const Mat3d& basis, const DampingSpec& spec);

/// Convenience composition of the two steps above.
Mat3d damping_matrix(const Vec3d& desired_velocity, const DampingSpec& spec, const Mat3d& previous);

/// Impedance law: damping-shaped velocity error plus gravity compensation.
/// No stiffness term — position convergence comes from the attractor
/// dynamics feeding the desired velocity.
Vec3d impedance_control_force(const Mat3d& damping, const Vec3d& x_dot_desired,
                              const Vec3d& x_dot, const ArmParams& params);

/// Axis-angle of R_d * R^T (the rotation still to go), as a rotation vector.
/// At half-turn angles, where the axis sign is ambiguous, the axis is
/// normalized so its largest-magnitude component is positive.
Vec3d orientation_error(const Mat3d& orientation, const Mat3d& orientation_desired);

Vec3d orientation_pd_torque(const Vec3d& error, const Vec3d& omega, double kp = 25.0,
                            double kd = 10.0);

/// One semi-implicit Euler step under the control force, environment force
/// and orientation torque.  The rotation update re-orthonormalizes through a
/// unit quaternion so drift never accumulates.
ArmState arm_step(const ArmParams& params, const ArmState& state, const Vec3d& control_force,
                  const Vec3d& external_force, const Vec3d& control_torque, double t, double dt);

}  // namespace teleped
