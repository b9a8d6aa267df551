#include "navsim/geodesy.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "navsim/angles.hpp"

namespace navsim::geo {

namespace {

double wrap_deg180(double d) {
  d = std::remainder(d, 360.0);
  if (d <= -180.0) d = 180.0;
  return d;
}

}  // namespace

LtpFrame make_ltp(const GeodeticCoord& origin) {
  if (!std::isfinite(origin.lat_deg) || std::abs(origin.lat_deg) > 90.0) {
    throw std::invalid_argument("origin latitude must lie in [-90, 90]");
  }
  if (!std::isfinite(origin.lon_deg) || !std::isfinite(origin.alt_m)) {
    throw std::invalid_argument("origin longitude and altitude must be finite");
  }
  if (std::abs(origin.lat_deg) >= 89.0) {
    throw std::invalid_argument(
        "origin too close to a pole for an equirectangular frame");
  }
  return LtpFrame{origin};
}

Eigen::Vector2d to_ltp(const LtpFrame& frame, const GeodeticCoord& g) {
  if (!std::isfinite(g.lat_deg) || !std::isfinite(g.lon_deg)) {
    throw std::invalid_argument("coordinate must be finite");
  }
  const double coslat0 = std::cos(deg2rad(frame.origin.lat_deg));
  const double dlon = wrap_deg180(g.lon_deg - frame.origin.lon_deg);
  const double dlat = g.lat_deg - frame.origin.lat_deg;
  const Eigen::Vector2d xy{deg2rad(dlon) * coslat0 * kEarthRadius,
                           deg2rad(dlat) * kEarthRadius};
  if (xy.norm() > 50'000.0) {
    std::fprintf(stderr,
                 "warning: point %.0f m from frame origin; planar projection "
                 "error grows beyond 50 km\n",
                 xy.norm());
  }
  return xy;
}

GeodeticCoord from_ltp(const LtpFrame& frame, const Eigen::Vector2d& xy) {
  const double coslat0 = std::cos(deg2rad(frame.origin.lat_deg));
  GeodeticCoord g;
  g.lat_deg = frame.origin.lat_deg + rad2deg(xy.y() / kEarthRadius);
  g.lon_deg =
      wrap_deg180(frame.origin.lon_deg + rad2deg(xy.x() / (kEarthRadius * coslat0)));
  g.alt_m = frame.origin.alt_m;
  return g;
}

double heading_from_field(const Eigen::Vector3d& field_body) {
  const double horiz = std::hypot(field_body.x(), field_body.y());
  if (!(horiz > 1e-12)) {
    throw std::runtime_error(
        "magnetic field has no horizontal component; heading undefined");
  }
  return std::atan2(field_body.x(), field_body.y());
}

}  // namespace navsim::geo
