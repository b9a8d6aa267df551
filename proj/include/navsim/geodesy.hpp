#pragma once

#include <Eigen/Dense>

namespace navsim::geo {

inline constexpr double kEarthRadius = 6'371'000.0;  // mean Earth radius [m]

struct GeodeticCoord {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  double alt_m = 0.0;
};

/// Local tangent plane anchored at a geodetic origin. Uses an
/// equirectangular projection: metres east per degree of longitude are
/// frozen at the origin latitude, so the map is affine and exactly
/// invertible. Intended for work within tens of kilometres of the origin.
struct LtpFrame {
  GeodeticCoord origin;
};

/// Builds a frame, validating the origin (lat in [-90, 90], lon finite).
/// Throws std::invalid_argument otherwise.
LtpFrame make_ltp(const GeodeticCoord& origin);

/// Geodetic to planar (x east, y north) in metres. Prints a warning to
/// stderr when the result lies more than 50 km from the origin, where the
/// projection's distortion stops being negligible.
Eigen::Vector2d to_ltp(const LtpFrame& frame, const GeodeticCoord& g);

/// Planar back to geodetic; altitude is copied from the frame origin.
GeodeticCoord from_ltp(const LtpFrame& frame, const Eigen::Vector2d& xy);

/// Heading from a body-frame magnetic field measurement, assuming the field
/// points to true north in the plane: a vehicle at heading theta measures
/// (sin theta, cos theta, 0), so theta = atan2(f_x, f_y). Throws
/// std::runtime_error when the horizontal component is degenerate.
double heading_from_field(const Eigen::Vector3d& field_body);

}  // namespace navsim::geo
