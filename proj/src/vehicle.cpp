#include "navsim/vehicle.hpp"

#include <cmath>
#include <stdexcept>

#include "navsim/angles.hpp"

namespace navsim::vehicle {

void VehicleParams::validate() const {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(r_wheel) || !positive(i_wheel) || !positive(l) ||
      !positive(gamma) || !positive(tau_0) || !positive(omega_0) ||
      !positive(c_1)) {
    throw std::invalid_argument("vehicle parameters must be positive");
  }
  if (!std::isfinite(c_0) || c_0 < 0.0) {
    throw std::invalid_argument("c_0 must be non-negative");
  }
  if (!std::isfinite(delta_max) || delta_max <= 0.0 || delta_max >= kPi / 2) {
    throw std::invalid_argument("delta_max must lie in (0, pi/2)");
  }
}

double drive_torque(double v, double alpha, const VehicleParams& p) {
  // Motor speed for forward speed v is v / (r * gamma); torque droops
  // linearly from stall to zero at omega_0.
  return p.tau_0 * alpha - p.tau_0 * v / (p.omega_0 * p.r_wheel * p.gamma);
}

double resistance_torque(double v, const VehicleParams& p) {
  return v * p.c_1 / (p.r_wheel * p.gamma) + p.c_0;
}

Eigen::Vector4d state_derivative(const VehicleState& q, const ControlInput& u,
                                 const VehicleParams& p) {
  if (!(std::abs(u.delta) < kPi / 2)) {
    throw std::invalid_argument("steering angle must satisfy |delta| < pi/2");
  }
  const double accel_gain = p.r_wheel * p.gamma / p.i_wheel;
  double dv =
      accel_gain * (drive_torque(q.v, u.alpha, p) - resistance_torque(q.v, p));
  // A vehicle at rest with no net drive torque stays at rest; resistance
  // cannot push it backwards.
  if (q.v <= 0.0 && dv < 0.0) dv = 0.0;
  return {q.v * std::cos(q.theta), q.v * std::sin(q.theta),
          q.v * std::tan(u.delta) / p.l, dv};
}

VehicleState step(const VehicleState& q, const ControlInput& u, double dt,
                  const VehicleParams& p) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("step size must be positive");
  }
  const Eigen::Vector4d dq = state_derivative(q, u, p);
  VehicleState out;
  out.x = q.x + dt * dq(0);
  out.y = q.y + dt * dq(1);
  out.theta = wrap_angle(q.theta + dt * dq(2));
  out.v = std::max(0.0, q.v + dt * dq(3));
  return out;
}

Eigen::Matrix4d motion_jacobian(const VehicleState& q, const ControlInput& u,
                                double dt, const VehicleParams& p) {
  if (!(std::abs(u.delta) < kPi / 2)) {
    throw std::invalid_argument("steering angle must satisfy |delta| < pi/2");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("step size must be positive");
  }
  // d(dv)/dv: the wheel-radius factors cancel between the back-EMF droop
  // and the torque-to-acceleration gain, leaving -(tau_0/omega_0 + c_1)/i.
  const double dvdot_dv = -(p.tau_0 / p.omega_0 + p.c_1) / p.i_wheel;
  Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
  j(0, 2) = -q.v * std::sin(q.theta);
  j(0, 3) = std::cos(q.theta);
  j(1, 2) = q.v * std::cos(q.theta);
  j(1, 3) = std::sin(q.theta);
  j(2, 3) = std::tan(u.delta) / p.l;
  j(3, 3) = dvdot_dv;
  return Eigen::Matrix4d::Identity() + dt * j;
}

double steady_state_throttle(double v_r, const VehicleParams& p) {
  if (!std::isfinite(v_r) || v_r < 0.0) {
    throw std::invalid_argument("reference speed must be non-negative");
  }
  const double alpha =
      v_r / (p.omega_0 * p.r_wheel * p.gamma) + resistance_torque(v_r, p) / p.tau_0;
  if (alpha > 1.0) {
    throw std::invalid_argument("reference speed exceeds drivetrain capability");
  }
  return alpha;
}

double max_speed(const VehicleParams& p) {
  // Solve drive_torque(v, 1) = resistance_torque(v) for v.
  const double num = p.tau_0 - p.c_0;
  const double den =
      p.tau_0 / (p.omega_0 * p.r_wheel * p.gamma) + p.c_1 / (p.r_wheel * p.gamma);
  return num / den;
}

}  // namespace navsim::vehicle
