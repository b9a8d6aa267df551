#include "navsim/trajectory.hpp"

#include <cmath>
#include <stdexcept>

#include "navsim/angles.hpp"

namespace navsim::traj {

double menger_curvature(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                        const Eigen::Vector2d& c) {
  const Eigen::Vector2d ab = b - a;
  const Eigen::Vector2d bc = c - b;
  const Eigen::Vector2d ac = c - a;
  const double lab = ab.norm();
  const double lbc = bc.norm();
  const double lac = ac.norm();
  if (lab < 1e-9 || lbc < 1e-9 || lac < 1e-9) return 0.0;
  const double cross = ab.x() * bc.y() - ab.y() * bc.x();
  return 2.0 * cross / (lab * lbc * lac);
}

void annotate_inputs(Trajectory& t, const vehicle::VehicleParams& params,
                     bool closed) {
  const std::size_t n = t.size();
  if (n == 0) return;
  std::vector<double> kappa(n, 0.0);
  if (n >= 3) {
    for (std::size_t i = 1; i + 1 < n; ++i) {
      kappa[i] = menger_curvature(t[i - 1].xy(), t[i].xy(), t[i + 1].xy());
    }
    if (closed && n >= 4) {
      // The first and last samples coincide on a closed path; wrap around
      // the duplicate.
      kappa[0] = menger_curvature(t[n - 2].xy(), t[0].xy(), t[1].xy());
      kappa[n - 1] = kappa[0];
    } else {
      kappa[0] = kappa[1];
      kappa[n - 1] = kappa[n - 2];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double delta = std::atan(params.l * kappa[i]);
    delta = std::clamp(delta, -params.delta_max, params.delta_max);
    t[i].u_ref.delta = delta;
    t[i].u_ref.alpha = vehicle::steady_state_throttle(t[i].v, params);
  }
}

namespace {

void check_generator_args(double speed, double spacing) {
  if (!(speed > 0.0) || !std::isfinite(speed)) {
    throw std::invalid_argument("path speed must be positive");
  }
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw std::invalid_argument("sample spacing must be positive");
  }
}

}  // namespace

Trajectory generate_circle(double radius, double speed, double spacing,
                           const vehicle::VehicleParams& params,
                           double arc_rad) {
  check_generator_args(speed, spacing);
  if (!(radius > 0.0) || !(arc_rad > 0.0) || arc_rad > 2.0 * kPi + 1e-9) {
    throw std::invalid_argument("circle needs radius > 0 and arc in (0, 2*pi]");
  }
  const double arc_len = radius * arc_rad;
  const auto n = static_cast<std::size_t>(
      std::max<long long>(2, std::llround(arc_len / spacing)));
  Trajectory t(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double phi = arc_rad * static_cast<double>(i) / static_cast<double>(n);
    t[i].x = radius * std::sin(phi);
    t[i].y = radius * (1.0 - std::cos(phi));
    t[i].theta = wrap_angle(phi);
    t[i].v = speed;
  }
  const bool closed = arc_rad > 2.0 * kPi - 1e-9;
  annotate_inputs(t, params, closed);
  return t;
}

Trajectory generate_sinusoid(double amplitude, double wavelength,
                             double length, double speed, double spacing,
                             const vehicle::VehicleParams& params) {
  check_generator_args(speed, spacing);
  if (!(wavelength > 0.0) || !(length > 0.0) || !std::isfinite(amplitude)) {
    throw std::invalid_argument("sinusoid needs wavelength > 0 and length > 0");
  }
  const double k = 2.0 * kPi / wavelength;
  Trajectory t;
  double x = 0.0;
  while (true) {
    ReferencePoint p;
    const double slope = amplitude * k * std::cos(k * x);
    p.x = x;
    p.y = amplitude * std::sin(k * x);
    p.theta = std::atan(slope);
    p.v = speed;
    t.push_back(p);
    if (x >= length) break;
    // Step in x so the arc-length advance is about `spacing`.
    const double dx = spacing / std::sqrt(1.0 + slope * slope);
    x = std::min(length, x + dx);
  }
  annotate_inputs(t, params, false);
  return t;
}

Trajectory from_waypoints(const std::vector<Eigen::Vector2d>& points,
                          double speed,
                          const vehicle::VehicleParams& params) {
  check_generator_args(speed, 1.0);
  if (points.size() < 2) {
    throw std::invalid_argument("waypoint path needs at least two points");
  }
  Trajectory t(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    t[i].x = points[i].x();
    t[i].y = points[i].y();
    t[i].v = speed;
    // Heading along the outgoing segment; the last point keeps the final
    // segment's heading.
    const std::size_t seg = (i + 1 < points.size()) ? i : i - 1;
    const Eigen::Vector2d d = points[seg + 1] - points[seg];
    t[i].theta = std::atan2(d.y(), d.x());
  }
  annotate_inputs(t, params, false);
  return t;
}

double mean_spacing(const Trajectory& t) {
  if (t.size() < 2) {
    throw std::invalid_argument("spacing needs at least two samples");
  }
  return path_length(t) / static_cast<double>(t.size() - 1);
}

double path_length(const Trajectory& t) {
  double len = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    len += (t[i].xy() - t[i - 1].xy()).norm();
  }
  return len;
}

}  // namespace navsim::traj
