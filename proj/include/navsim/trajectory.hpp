#pragma once

#include <vector>

#include <Eigen/Dense>

#include "navsim/vehicle.hpp"

namespace navsim::traj {

/// One sample of the reference path: pose, speed, and the nominal input
/// that holds the vehicle on the path at that sample.
struct ReferencePoint {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double v = 1.0;
  vehicle::ControlInput u_ref;

  Eigen::Vector2d xy() const { return {x, y}; }
};

using Trajectory = std::vector<ReferencePoint>;

/// Signed curvature of the circle through three points (positive for a left
/// turn). Returns 0 when the points are collinear or nearly coincident.
double menger_curvature(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                        const Eigen::Vector2d& c);

/// Fills u_ref for every sample: steering from the local three-point
/// curvature estimate (clamped to the steering limit), throttle from the
/// steady-state map at the sample's speed. Endpoints reuse their neighbor's
/// curvature; closed paths wrap around instead.
void annotate_inputs(Trajectory& t, const vehicle::VehicleParams& params,
                     bool closed);

/// Counterclockwise circular arc of the given radius, starting at the origin
/// heading +x (circle center at (0, radius)), sampled at approximately
/// `spacing` metres of arc length. arc_rad = 2*pi closes the loop.
Trajectory generate_circle(double radius, double speed, double spacing,
                           const vehicle::VehicleParams& params,
                           double arc_rad = 6.283185307179586);

/// Sine path y = amplitude * sin(2*pi*x / wavelength) for x in [0, length],
/// sampled at approximately `spacing` metres of arc length, heading along
/// the tangent.
Trajectory generate_sinusoid(double amplitude, double wavelength,
                             double length, double speed, double spacing,
                             const vehicle::VehicleParams& params);

/// Piecewise-linear path through waypoints, headings along the segments.
Trajectory from_waypoints(const std::vector<Eigen::Vector2d>& points,
                          double speed,
                          const vehicle::VehicleParams& params);

/// Mean sample spacing along the path [m].
double mean_spacing(const Trajectory& t);

/// Total polyline length [m].
double path_length(const Trajectory& t);

}  // namespace navsim::traj
