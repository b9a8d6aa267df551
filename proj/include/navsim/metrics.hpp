#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace navsim::metrics {

/// Euclidean distance from point p to the segment [a, b].
double point_segment_distance(const Eigen::Vector2d& p,
                              const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b);

/// Distance from each point to a polyline (minimum over its segments).
/// Points are independent, so the rows are split across OpenMP threads;
/// output is identical to the serial variant.
std::vector<double> polyline_distances(const std::vector<Eigen::Vector2d>& pts,
                                       const std::vector<Eigen::Vector2d>& poly);

/// Single-threaded reference implementation of polyline_distances.
std::vector<double> polyline_distances_serial(
    const std::vector<Eigen::Vector2d>& pts,
    const std::vector<Eigen::Vector2d>& poly);

struct ErrorStats {
  double avg = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

ErrorStats stats_of(const std::vector<double>& errors);

}  // namespace navsim::metrics
