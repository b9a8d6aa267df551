#include "navsim/sensors.hpp"

#include <cmath>

#include "navsim/angles.hpp"

namespace navsim::sensors {

geo::GeodeticCoord Gps::measure(const Eigen::Vector2d& true_xy) {
  const Eigen::Vector2d noisy{true_xy.x() + chain_x_.step(),
                              true_xy.y() + chain_y_.step()};
  return geo::from_ltp(frame_, noisy);
}

Eigen::Vector3d Magnetometer::measure_field(double theta_true) {
  const double theta = wrap_angle(stream_.normal(theta_true, sigma_));
  return {std::sin(theta), std::cos(theta), 0.0};
}

double Magnetometer::measure_heading(double theta_true) {
  return geo::heading_from_field(measure_field(theta_true));
}

}  // namespace navsim::sensors
