#include "navsim/simulate.hpp"

#include <cmath>

#include "navsim/ekf.hpp"
#include "navsim/mpc.hpp"
#include "navsim/sensors.hpp"

namespace navsim::sim {

namespace {

vehicle::VehicleState state_from_reference(const traj::ReferencePoint& r) {
  vehicle::VehicleState q;
  q.x = r.x;
  q.y = r.y;
  q.theta = r.theta;
  q.v = r.v;
  return q;
}

Scenario with_shifted_seeds(const Scenario& base, int run,
                            std::uint64_t seed_stride) {
  Scenario s = base;
  const std::uint64_t shift = static_cast<std::uint64_t>(run) * seed_stride;
  s.gps_noise.seed += shift;
  s.magnetometer.seed += shift;
  return s;
}

}  // namespace

RunResult run_scenario(const Scenario& scn) {
  scn.validate();

  RunResult out;
  out.trajectory = build_trajectory(scn);
  const traj::Trajectory& path = out.trajectory;

  const geo::LtpFrame frame = geo::make_ltp(scn.origin);
  const vehicle::VehicleParams plant =
      perturbed(scn.vehicle, scn.plant_perturbation);

  const bool use_ekf = scn.mode != Mode::mpc_privileged;
  const bool use_mpc = scn.mode != Mode::ekf_only;

  vehicle::VehicleState truth = scn.initial_state
                                    ? *scn.initial_state
                                    : state_from_reference(path.front());

  ekf::Estimate est = ekf::initial_estimate(truth, scn.ekf);
  sensors::Gps gps(scn.gps_noise, frame);
  sensors::Magnetometer mag(scn.magnetometer);

  const auto gps_every =
      static_cast<long long>(std::llround(1.0 / (scn.gps_rate_hz * scn.dt_s)));
  const auto mag_every =
      static_cast<long long>(std::llround(1.0 / (scn.mag_rate_hz * scn.dt_s)));

  mpc::MpcConfig mpc_cfg = scn.mpc;
  mpc_cfg.dt = scn.dt_s;
  mpc::ControllerState ctrl;
  ctrl.last_input = path.front().u_ref;

  const vehicle::ControlInput fixed =
      scn.fixed_input ? *scn.fixed_input : path.front().u_ref;

  const auto n_ticks =
      std::max<long long>(1, std::llround(scn.duration_s / scn.dt_s));
  out.rows.reserve(static_cast<std::size_t>(n_ticks));

  vehicle::ControlInput u_prev = fixed;
  for (long long tick = 0; tick < n_ticks; ++tick) {
    const double t = static_cast<double>(tick) * scn.dt_s;
    if (tick > 0 && use_ekf) {
      est = ekf::predict(est, u_prev, scn.dt_s, scn.vehicle, scn.ekf);
    }

    LogRow row;
    row.tick = tick;
    row.t = t;
    row.truth = truth;

    if (tick % gps_every == 0) {
      const geo::GeodeticCoord fix = gps.measure({truth.x, truth.y});
      const Eigen::Vector2d z = geo::to_ltp(frame, fix);
      row.meas_xy = z;
      if (use_ekf) est = ekf::update_position(est, z, scn.ekf);
    }
    if (tick % mag_every == 0) {
      const double z = mag.measure_heading(truth.theta);
      row.meas_theta = z;
      if (use_ekf) est = ekf::update_heading(est, z, scn.ekf);
    }

    vehicle::ControlInput u = fixed;
    if (use_mpc) {
      const vehicle::VehicleState& q_ctrl =
          scn.mode == Mode::ekf_mpc ? est.q : truth;
      const mpc::StepResult res =
          mpc::step_controller(q_ctrl, path, ctrl, mpc_cfg, scn.vehicle);
      u = res.input;
      row.ref = path[res.ref_index];
      row.qp = QpLogEntry{res.diag.status, res.diag.iterations,
                          res.diag.objective};
    }
    if (use_ekf) row.est = est.q;
    row.u = u;
    out.rows.push_back(row);

    truth = vehicle::step(truth, u, scn.dt_s, plant);
    u_prev = u;
  }

  out.metrics = compute_metrics(out.rows, path, scn.metrics_skip_s);
  return out;
}

RunMetrics compute_metrics(const std::vector<LogRow>& rows,
                           const traj::Trajectory& trajectory, double skip_s) {
  std::vector<double> meas_err;
  std::vector<double> est_err;
  std::vector<Eigen::Vector2d> truth_pts;
  for (const LogRow& r : rows) {
    if (r.t < skip_s) continue;
    const Eigen::Vector2d truth_xy{r.truth.x, r.truth.y};
    if (r.meas_xy) meas_err.push_back((*r.meas_xy - truth_xy).norm());
    if (r.est) {
      est_err.push_back(
          (Eigen::Vector2d{r.est->x, r.est->y} - truth_xy).norm());
    }
    truth_pts.push_back(truth_xy);
  }

  RunMetrics m;
  m.meas_vs_truth = metrics::stats_of(meas_err);
  m.est_vs_truth = metrics::stats_of(est_err);
  if (!truth_pts.empty() && trajectory.size() >= 2) {
    std::vector<Eigen::Vector2d> poly;
    poly.reserve(trajectory.size());
    for (const auto& p : trajectory) poly.push_back(p.xy());
    m.truth_vs_ref = metrics::stats_of(metrics::polyline_distances(truth_pts, poly));
  }
  return m;
}

std::vector<BatchRun> run_batch(const Scenario& base, int runs,
                                std::uint64_t seed_stride) {
  if (runs < 1) throw std::invalid_argument("batch needs at least one run");
  base.validate();
  std::vector<BatchRun> out(static_cast<std::size_t>(runs));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < runs; ++i) {
    auto& slot = out[static_cast<std::size_t>(i)];
    try {
      slot.result = run_scenario(with_shifted_seeds(base, i, seed_stride));
      slot.ok = true;
    } catch (const std::exception& e) {
      slot.ok = false;
      slot.error = e.what();
    }
  }
  return out;
}

std::vector<BatchRun> run_batch_serial(const Scenario& base, int runs,
                                       std::uint64_t seed_stride) {
  if (runs < 1) throw std::invalid_argument("batch needs at least one run");
  base.validate();
  std::vector<BatchRun> out(static_cast<std::size_t>(runs));
  for (int i = 0; i < runs; ++i) {
    auto& slot = out[static_cast<std::size_t>(i)];
    try {
      slot.result = run_scenario(with_shifted_seeds(base, i, seed_stride));
      slot.ok = true;
    } catch (const std::exception& e) {
      slot.ok = false;
      slot.error = e.what();
    }
  }
  return out;
}

}  // namespace navsim::sim
