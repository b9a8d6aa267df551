#include "navsim/metrics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace navsim::metrics {

double point_segment_distance(const Eigen::Vector2d& p,
                              const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 <= 0.0) return (p - a).norm();
  const double s = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + s * ab)).norm();
}

namespace {

double min_distance_to_polyline(const Eigen::Vector2d& p,
                                const std::vector<Eigen::Vector2d>& poly) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < poly.size(); ++i) {
    best = std::min(best, point_segment_distance(p, poly[i - 1], poly[i]));
  }
  return best;
}

void check_polyline(const std::vector<Eigen::Vector2d>& poly) {
  if (poly.size() < 2) {
    throw std::invalid_argument("polyline needs at least two vertices");
  }
}

}  // namespace

std::vector<double> polyline_distances(const std::vector<Eigen::Vector2d>& pts,
                                       const std::vector<Eigen::Vector2d>& poly) {
  check_polyline(poly);
  std::vector<double> out(pts.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(pts.size()); ++i) {
    out[static_cast<std::size_t>(i)] =
        min_distance_to_polyline(pts[static_cast<std::size_t>(i)], poly);
  }
  return out;
}

std::vector<double> polyline_distances_serial(
    const std::vector<Eigen::Vector2d>& pts,
    const std::vector<Eigen::Vector2d>& poly) {
  check_polyline(poly);
  std::vector<double> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out[i] = min_distance_to_polyline(pts[i], poly);
  }
  return out;
}

ErrorStats stats_of(const std::vector<double>& errors) {
  ErrorStats s;
  s.count = errors.size();
  if (errors.empty()) return s;
  double sum = 0.0;
  for (double e : errors) {
    sum += e;
    s.max = std::max(s.max, e);
  }
  s.avg = sum / static_cast<double>(errors.size());
  return s;
}

}  // namespace navsim::metrics
