#pragma once

#include <Eigen/Dense>

#include "navsim/vehicle.hpp"

namespace navsim::ekf {

struct EkfConfig {
  Eigen::Matrix4d p0 = Eigen::Matrix4d::Identity() * 1e-2;
  Eigen::Matrix4d q_process =
      Eigen::Vector4d{1e-4, 1e-4, 1e-3, 1e-2}.asDiagonal();
  Eigen::Matrix2d r_gps = Eigen::Matrix2d::Identity() * 0.64;
  double r_heading = 4e-4;
};

/// Filter state: the estimate and its covariance.
struct Estimate {
  vehicle::VehicleState q;
  Eigen::Matrix4d p;
};

Estimate initial_estimate(const vehicle::VehicleState& q0,
                          const EkfConfig& cfg);

/// Propagates the estimate through the motion model with the applied input
/// and inflates the covariance: P <- F P F^T + Q, with F the motion Jacobian
/// evaluated at the pre-update estimate.
Estimate predict(const Estimate& e, const vehicle::ControlInput& u, double dt,
                 const vehicle::VehicleParams& params, const EkfConfig& cfg);

/// Position update from a planar GPS fix. Throws std::runtime_error if the
/// innovation covariance is not invertible.
Estimate update_position(const Estimate& e, const Eigen::Vector2d& z_xy,
                         const EkfConfig& cfg);

/// Scalar heading update; the innovation is wrapped so a measurement of
/// +3.1 rad against an estimate of -3.1 rad counts as a small error.
Estimate update_heading(const Estimate& e, double z_theta,
                        const EkfConfig& cfg);

}  // namespace navsim::ekf
