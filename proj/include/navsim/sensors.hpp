#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "navsim/geodesy.hpp"
#include "navsim/noise.hpp"
#include "navsim/random.hpp"

namespace navsim::sensors {

/// GPS receiver model: the true planar position plus one bounded random
/// walk per axis, reported as a geodetic fix.
class Gps {
 public:
  Gps(const noise::GpsNoiseParams& params, const geo::LtpFrame& frame)
      : frame_(frame),
        chain_x_(params, rng::derive_seed(params.seed, 0)),
        chain_y_(params, rng::derive_seed(params.seed, 1)) {}

  /// Offset applied to the next fix, before stepping (for tests).
  Eigen::Vector2d current_offset() const {
    return {chain_x_.state().p, chain_y_.state().p};
  }

  /// Steps both axis walks and returns the corrupted fix.
  geo::GeodeticCoord measure(const Eigen::Vector2d& true_xy);

 private:
  geo::LtpFrame frame_;
  noise::GpsAxisChain chain_x_;
  noise::GpsAxisChain chain_y_;
};

struct MagnetometerParams {
  double sigma_theta = 0.02;  ///< heading noise std dev [rad]
  std::uint64_t seed = 2;
};

/// Magnetometer model: the field measured in the body frame is north
/// rotated by the true heading, with angular noise added to that heading.
class Magnetometer {
 public:
  explicit Magnetometer(const MagnetometerParams& params)
      : sigma_(params.sigma_theta), stream_(params.seed) {}

  /// Returns the body-frame field unit vector for the noisy heading.
  Eigen::Vector3d measure_field(double theta_true);

  /// Convenience: field measurement decoded back to a heading in (-pi, pi].
  double measure_heading(double theta_true);

 private:
  double sigma_;
  rng::GaussianStream stream_;
};

}  // namespace navsim::sensors
