#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace navsim::io {

/// Planar series to draw: reference path, truth path, estimate path, and
/// raw measurement points. Any series may be empty.
struct PlotSeries {
  std::vector<Eigen::Vector2d> ref;
  std::vector<Eigen::Vector2d> truth;
  std::vector<Eigen::Vector2d> est;
  std::vector<Eigen::Vector2d> meas;
};

/// Renders an equal-aspect SVG: metric axes with tick labels, the three
/// paths as polylines, measurements as dots, and a legend. Throws
/// std::invalid_argument when every series is empty.
std::string render_svg(const PlotSeries& series);

/// Writes content atomically: a temp file in the target directory is
/// renamed over the destination, so readers never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace navsim::io
