#pragma once

#include <Eigen/Dense>

namespace navsim::vehicle {

/// Physical parameters of the rear-drive bicycle model.
///
/// The drivetrain maps a normalized throttle command through a DC motor
/// (stall torque tau_0, no-load speed omega_0) and a fixed gear ratio gamma
/// onto a rear wheel of radius r_wheel. Rolling resistance is affine in
/// forward speed (c_0 + c_1 * omega_wheel).
struct VehicleParams {
  double r_wheel = 0.08;    ///< wheel radius [m]
  double i_wheel = 1e-3;    ///< effective inertia at the wheel [kg m^2]
  double l = 0.5;           ///< wheelbase [m]
  double gamma = 0.33;      ///< gear ratio (motor revs per wheel rev is 1/gamma)
  double tau_0 = 0.3;       ///< motor stall torque [N m]
  double omega_0 = 1300.0;  ///< motor no-load speed [rad/s]
  double c_0 = 0.02;        ///< static rolling resistance torque [N m]
  double c_1 = 1e-4;        ///< speed-proportional resistance [N m s]
  double delta_max = 0.45;  ///< steering limit [rad]

  void validate() const;
};

/// Pose plus forward speed: x, y in the local planar frame, heading theta
/// in (-pi, pi], speed v >= 0.
struct VehicleState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double v = 0.0;

  Eigen::Vector4d vec() const { return {x, y, theta, v}; }
  static VehicleState from_vec(const Eigen::Vector4d& q) {
    return {q(0), q(1), q(2), q(3)};
  }
};

/// Normalized throttle alpha in [0, 1] and steering angle delta in
/// [-delta_max, delta_max].
struct ControlInput {
  double alpha = 0.0;
  double delta = 0.0;
};

/// Drive torque at the wheel for throttle alpha at speed v. Linear motor
/// curve: stall torque scaled by throttle minus back-EMF droop.
double drive_torque(double v, double alpha, const VehicleParams& p);

/// Resistance torque at the wheel at speed v (affine rolling resistance).
double resistance_torque(double v, const VehicleParams& p);

/// Continuous-time state derivative [dx, dy, dtheta, dv].
///
/// The speed derivative is clamped so that a stationary vehicle with net
/// braking torque stays at rest (v never goes negative through this model).
/// Throws std::invalid_argument when |delta| >= pi/2 (kinematic singularity).
Eigen::Vector4d state_derivative(const VehicleState& q, const ControlInput& u,
                                 const VehicleParams& p);

/// One explicit-Euler step of length dt. Heading is wrapped to (-pi, pi]
/// and speed clamped at zero. Throws std::invalid_argument for dt <= 0.
VehicleState step(const VehicleState& q, const ControlInput& u, double dt,
                  const VehicleParams& p);

/// Jacobian of the Euler step with respect to the state, F = I + dt * df/dq,
/// evaluated at (q, u). Used by the estimator's covariance propagation.
Eigen::Matrix4d motion_jacobian(const VehicleState& q, const ControlInput& u,
                                double dt, const VehicleParams& p);

/// Throttle that holds speed v_r in steady state (drive torque equals
/// resistance). Throws std::invalid_argument if the speed needs alpha > 1.
double steady_state_throttle(double v_r, const VehicleParams& p);

/// Top speed reachable with full throttle (where drive equals resistance).
double max_speed(const VehicleParams& p);

}  // namespace navsim::vehicle
