#pragma once

#include <optional>
#include <string>
#include <vector>

#include "navsim/metrics.hpp"
#include "navsim/qp.hpp"
#include "navsim/scenario.hpp"

namespace navsim::sim {

struct QpLogEntry {
  qp::Status status = qp::Status::solved;
  int iterations = 0;
  double objective = 0.0;
};

/// One simulation tick as logged: the truth state at time t, whatever the
/// sensors produced on this tick, the estimator and controller outputs, and
/// the input that is applied over [t, t + dt).
struct LogRow {
  long long tick = 0;
  double t = 0.0;
  vehicle::VehicleState truth;
  std::optional<Eigen::Vector2d> meas_xy;
  std::optional<double> meas_theta;
  std::optional<vehicle::VehicleState> est;
  std::optional<traj::ReferencePoint> ref;
  vehicle::ControlInput u;
  std::optional<QpLogEntry> qp;
};

struct RunMetrics {
  metrics::ErrorStats meas_vs_truth;  ///< GPS fix against truth, same tick
  metrics::ErrorStats est_vs_truth;   ///< estimate against truth, same tick
  metrics::ErrorStats truth_vs_ref;   ///< truth against the reference polyline
};

struct RunResult {
  std::vector<LogRow> rows;
  traj::Trajectory trajectory;
  RunMetrics metrics;
};

/// Runs one closed-loop scenario. The plant steps with the perturbed
/// parameters; the estimator and controller only ever see the nominal ones.
/// Throws ConfigError for invalid scenarios and std::runtime_error for
/// failures inside the loop.
RunResult run_scenario(const Scenario& scn);

/// Error metrics over rows with t >= skip_s.
RunMetrics compute_metrics(const std::vector<LogRow>& rows,
                           const traj::Trajectory& trajectory, double skip_s);

struct BatchRun {
  bool ok = false;
  std::string error;
  RunResult result;
};

/// Runs `runs` replicates that differ only in their sensor seeds (replicate
/// i shifts both seeds by i * seed_stride). Replicates are independent, so
/// they are distributed across OpenMP threads; a failing replicate records
/// its error and does not abort the rest.
std::vector<BatchRun> run_batch(const Scenario& base, int runs,
                                std::uint64_t seed_stride);

/// Single-threaded reference implementation of run_batch.
std::vector<BatchRun> run_batch_serial(const Scenario& base, int runs,
                                       std::uint64_t seed_stride);

}  // namespace navsim::sim
