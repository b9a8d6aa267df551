#include "navsim/mpc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace navsim::mpc {

void MpcConfig::validate() const {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("controller step must be positive");
  }
  if (lookahead < 0) throw std::invalid_argument("lookahead must be >= 0");
  if (!q_weight.allFinite() || !r_weight.allFinite() || !e_bound.allFinite()) {
    throw std::invalid_argument("weights and bounds must be finite");
  }
  if ((e_bound.array() <= 0.0).any()) {
    throw std::invalid_argument("error bounds must be positive");
  }
}

ErrorState error_state(const vehicle::VehicleState& q,
                       const traj::ReferencePoint& ref) {
  const double dx = ref.x - q.x;
  const double dy = ref.y - q.y;
  const double c = std::cos(q.theta);
  const double s = std::sin(q.theta);
  ErrorState e;
  e.e1 = c * dx + s * dy;
  e.e2 = -s * dx + c * dy;
  e.e3 = angle_diff(ref.theta, q.theta);
  e.e4 = ref.v - q.v;
  return e;
}

LookupResult reference_lookup(const vehicle::VehicleState& q,
                              const traj::Trajectory& t, std::size_t cursor,
                              int lookahead) {
  if (t.empty()) {
    throw std::invalid_argument("reference lookup on an empty trajectory");
  }
  if (lookahead < 0) throw std::invalid_argument("lookahead must be >= 0");
  const std::size_t last = t.size() - 1;
  const std::size_t start = std::min(cursor, last);
  std::size_t best = start;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = start; i <= last; ++i) {
    const double dx = t[i].x - q.x;
    const double dy = t[i].y - q.y;
    const double d2 = dx * dx + dy * dy;
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  LookupResult out;
  out.cursor = best;
  out.ref_index = std::min(best + static_cast<std::size_t>(lookahead), last);
  return out;
}

HorizonModel linearize_horizon(const ErrorState& e0,
                               const std::vector<traj::ReferencePoint>& refs,
                               const std::vector<double>& deltas, double dt,
                               const vehicle::VehicleParams& params) {
  if (refs.empty() || deltas.size() != refs.size()) {
    throw std::invalid_argument("one reference and one steering per step");
  }
  const std::size_t n = refs.size();
  HorizonModel model;
  model.a.resize(n);
  model.b.resize(n);
  const double dv_de4 =
      -(params.c_1 * params.omega_0 + params.tau_0) /
      (params.i_wheel * params.omega_0);
  const double drive_gain =
      -params.tau_0 * params.r_wheel * params.gamma / params.i_wheel;
  for (std::size_t k = 0; k < n; ++k) {
    const double v = refs[k].v;
    const double delta = deltas[k];
    if (!(std::abs(delta) < kPi / 2)) {
      throw std::invalid_argument("nominal steering must satisfy |delta| < pi/2");
    }
    const double w = v * std::tan(delta) / params.l;
    const double cd = std::cos(delta);
    const double steer_gain = v / (params.l * cd * cd);

    Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
    j(0, 1) = w;
    j(0, 2) = -v * std::sin(e0.e3);
    j(1, 0) = -w;
    j(1, 2) = v * std::cos(e0.e3);
    j(3, 3) = dv_de4;
    model.a[k] = Eigen::Matrix4d::Identity() + dt * j;

    Eigen::Matrix<double, 4, 2> b = Eigen::Matrix<double, 4, 2>::Zero();
    b(0, 1) = e0.e2 * steer_gain;
    b(1, 1) = -e0.e1 * steer_gain;
    b(2, 1) = -steer_gain;
    b(3, 0) = drive_gain;
    model.b[k] = dt * b;
  }
  return model;
}

StackedQp build_qp(const ErrorState& e0, const HorizonModel& model,
                   const std::vector<traj::ReferencePoint>& refs,
                   const MpcConfig& cfg,
                   const vehicle::VehicleParams& params) {
  cfg.validate();
  const int n_steps = cfg.horizon;
  if (static_cast<int>(refs.size()) != n_steps ||
      static_cast<int>(model.a.size()) != n_steps) {
    throw std::invalid_argument("model and references must cover the horizon");
  }

  StackedQp sqp;
  sqp.horizon = n_steps;
  const Eigen::Index n = 4 * (n_steps + 1) + 2 * n_steps;
  const Eigen::Index m = 4 + 10 * static_cast<Eigen::Index>(n_steps);

  std::vector<Eigen::Triplet<double>> pt;
  Eigen::VectorXd lin = Eigen::VectorXd::Zero(n);
  double offset = 0.0;
  for (int k = 0; k <= n_steps; ++k) {
    const Eigen::Index o = sqp.e_offset(k);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        const double v = 2.0 * cfg.q_weight(r, c);
        if (v != 0.0) pt.emplace_back(o + r, o + c, v);
      }
    }
  }
  for (int k = 0; k < n_steps; ++k) {
    const Eigen::Index o = sqp.u_offset(k);
    const Eigen::Vector2d ur{refs[static_cast<std::size_t>(k)].u_ref.alpha,
                             refs[static_cast<std::size_t>(k)].u_ref.delta};
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        const double v = 2.0 * cfg.r_weight(r, c);
        if (v != 0.0) pt.emplace_back(o + r, o + c, v);
      }
    }
    lin.segment<2>(o) = -2.0 * cfg.r_weight * ur;
    offset += ur.dot(cfg.r_weight * ur);
  }

  std::vector<Eigen::Triplet<double>> at;
  Eigen::VectorXd lower(m);
  Eigen::VectorXd upper(m);

  // Initial error pinned.
  for (int r = 0; r < 4; ++r) at.emplace_back(r, sqp.e_offset(0) + r, 1.0);
  lower.head<4>() = e0.vec();
  upper.head<4>() = e0.vec();

  // Dynamics: e_{k+1} - A_k e_k - B_k u_k = -B_k u_ref,k. The right-hand
  // side keeps the plan anchored so that following the reference exactly
  // (u = u_ref) holds the error at zero.
  for (int k = 0; k < n_steps; ++k) {
    const Eigen::Index row = 4 + 4 * static_cast<Eigen::Index>(k);
    const auto& a = model.a[static_cast<std::size_t>(k)];
    const auto& b = model.b[static_cast<std::size_t>(k)];
    for (int r = 0; r < 4; ++r) {
      at.emplace_back(row + r, sqp.e_offset(k + 1) + r, 1.0);
      for (int c = 0; c < 4; ++c) {
        if (a(r, c) != 0.0) at.emplace_back(row + r, sqp.e_offset(k) + c, -a(r, c));
      }
      for (int c = 0; c < 2; ++c) {
        if (b(r, c) != 0.0) at.emplace_back(row + r, sqp.u_offset(k) + c, -b(r, c));
      }
    }
    const Eigen::Vector2d ur{refs[static_cast<std::size_t>(k)].u_ref.alpha,
                             refs[static_cast<std::size_t>(k)].u_ref.delta};
    const Eigen::Vector4d rhs = -b * ur;
    lower.segment<4>(row) = rhs;
    upper.segment<4>(row) = rhs;
  }

  // Error boxes on e_1..e_N.
  for (int k = 1; k <= n_steps; ++k) {
    const Eigen::Index row = 4 + 4 * static_cast<Eigen::Index>(n_steps) +
                             4 * static_cast<Eigen::Index>(k - 1);
    for (int r = 0; r < 4; ++r) {
      at.emplace_back(row + r, sqp.e_offset(k) + r, 1.0);
      lower(row + r) = -cfg.e_bound(r);
      upper(row + r) = cfg.e_bound(r);
    }
  }

  // Input boxes.
  for (int k = 0; k < n_steps; ++k) {
    const Eigen::Index row = 4 + 8 * static_cast<Eigen::Index>(n_steps) +
                             2 * static_cast<Eigen::Index>(k);
    at.emplace_back(row, sqp.u_offset(k), 1.0);
    lower(row) = 0.0;
    upper(row) = 1.0;
    at.emplace_back(row + 1, sqp.u_offset(k) + 1, 1.0);
    lower(row + 1) = -params.delta_max;
    upper(row + 1) = params.delta_max;
  }

  sqp.problem.p.resize(n, n);
  sqp.problem.p.setFromTriplets(pt.begin(), pt.end());
  sqp.problem.a.resize(m, n);
  sqp.problem.a.setFromTriplets(at.begin(), at.end());
  sqp.problem.q = lin;
  sqp.problem.lower = lower;
  sqp.problem.upper = upper;
  sqp.problem.objective_offset = offset;
  return sqp;
}

StepResult step_controller(const vehicle::VehicleState& q,
                           const traj::Trajectory& t, ControllerState& state,
                           const MpcConfig& cfg,
                           const vehicle::VehicleParams& params) {
  cfg.validate();
  const auto lookup = reference_lookup(q, t, state.cursor, cfg.lookahead);
  state.cursor = lookup.cursor;

  const auto n_steps = static_cast<std::size_t>(cfg.horizon);
  const std::size_t last = t.size() - 1;
  const double spacing = traj::mean_spacing(t);
  const double v_ref = t[lookup.ref_index].v;
  const auto stride = static_cast<std::size_t>(
      std::max<long long>(1, std::llround(v_ref * cfg.dt / spacing)));

  std::vector<traj::ReferencePoint> refs(n_steps);
  for (std::size_t k = 0; k < n_steps; ++k) {
    refs[k] = t[std::min(lookup.ref_index + k * stride, last)];
  }

  const ErrorState e0 = error_state(q, refs[0]);

  std::vector<double> deltas(n_steps);
  const bool have_plan = state.last_deltas.size() == n_steps;
  for (std::size_t k = 0; k < n_steps; ++k) {
    deltas[k] = have_plan ? state.last_deltas[std::min(k + 1, n_steps - 1)]
                          : refs[k].u_ref.delta;
  }

  const HorizonModel model =
      linearize_horizon(e0, refs, deltas, cfg.dt, params);
  StackedQp sqp = build_qp(e0, model, refs, cfg, params);

  std::optional<qp::WarmStart> warm;
  if (state.warm && state.warm->x.size() == sqp.problem.num_vars() &&
      state.warm->y.size() == sqp.problem.num_constraints()) {
    warm = state.warm;
  }
  const qp::Solution sol = qp::solve(sqp.problem, cfg.solver, warm);

  StepResult out;
  out.ref_index = lookup.ref_index;
  out.diag.status = sol.status;
  out.diag.iterations = sol.iterations;
  out.diag.objective = sol.objective;

  if (sol.status == qp::Status::primal_infeasible) {
    out.diag.held_last = true;
    out.input = state.last_input;
    state.warm.reset();
    state.last_deltas.clear();
  } else {
    vehicle::ControlInput u;
    u.alpha = std::clamp(sol.x(sqp.u_offset(0)), 0.0, 1.0);
    u.delta = std::clamp(sol.x(sqp.u_offset(0) + 1), -params.delta_max,
                         params.delta_max);
    out.input = u;
    state.warm = qp::WarmStart{sol.x, sol.y};
    state.last_deltas.resize(n_steps);
    for (std::size_t k = 0; k < n_steps; ++k) {
      state.last_deltas[k] = std::clamp(
          sol.x(sqp.u_offset(static_cast<int>(k)) + 1), -params.delta_max,
          params.delta_max);
    }
  }
  state.last_input = out.input;
  return out;
}

}  // namespace navsim::mpc
