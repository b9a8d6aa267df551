#include "navsim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "navsim/angles.hpp"

namespace navsim::sim {

namespace {

using nlohmann::json;

std::string joined(const char* context, const std::string& key) {
  return std::string(context) + "." + key;
}

void check_keys(const json& obj, const char* context,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) {
    throw ConfigError(std::string(context) + " must be an object");
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) {
      if (it.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("unknown key '" + joined(context, it.key()) + "'");
    }
  }
}

double as_number(const json& v, const char* context, const std::string& key) {
  if (!v.is_number()) {
    throw ConfigError("'" + joined(context, key) + "' must be a number");
  }
  return v.get<double>();
}

double get_number(const json& obj, const char* context, const char* key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  return as_number(obj.at(key), context, key);
}

double require_number(const json& obj, const char* context, const char* key) {
  if (!obj.contains(key)) {
    throw ConfigError("missing required key '" + joined(context, key) + "'");
  }
  return as_number(obj.at(key), context, key);
}

int get_int(const json& obj, const char* context, const char* key,
            int fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError("'" + joined(context, key) + "' must be an integer");
  }
  return v.get<int>();
}

std::uint64_t get_seed(const json& obj, const char* context, const char* key,
                       std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0)) {
    throw ConfigError("'" + joined(context, key) + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

bool get_bool(const json& obj, const char* context, const char* key,
              bool fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_boolean()) {
    throw ConfigError("'" + joined(context, key) + "' must be a boolean");
  }
  return v.get<bool>();
}

std::string get_string(const json& obj, const char* context, const char* key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_string()) {
    throw ConfigError("'" + joined(context, key) + "' must be a string");
  }
  return v.get<std::string>();
}

Eigen::VectorXd get_diag(const json& obj, const char* context, const char* key,
                         const Eigen::VectorXd& fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != fallback.size()) {
    throw ConfigError("'" + joined(context, key) + "' must be an array of " +
                      std::to_string(fallback.size()) + " numbers");
  }
  Eigen::VectorXd out(fallback.size());
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out(i) = as_number(v.at(static_cast<std::size_t>(i)), context, key);
  }
  return out;
}

TrajectorySpec parse_trajectory(const json& obj) {
  check_keys(obj, "trajectory",
             {"kind", "radius_m", "arc_deg", "amplitude_m", "wavelength_m",
              "length_m", "waypoints", "speed_mps", "spacing_m"});
  TrajectorySpec spec;
  const std::string kind = get_string(obj, "trajectory", "kind", "");
  if (kind == "circle") {
    spec.kind = TrajectorySpec::Kind::circle;
  } else if (kind == "sinusoid") {
    spec.kind = TrajectorySpec::Kind::sinusoid;
  } else if (kind == "waypoints") {
    spec.kind = TrajectorySpec::Kind::waypoints;
  } else {
    throw ConfigError("'trajectory.kind' must be circle, sinusoid, or waypoints");
  }
  spec.radius = get_number(obj, "trajectory", "radius_m", spec.radius);
  spec.arc_deg = get_number(obj, "trajectory", "arc_deg", spec.arc_deg);
  spec.amplitude = get_number(obj, "trajectory", "amplitude_m", spec.amplitude);
  spec.wavelength = get_number(obj, "trajectory", "wavelength_m", spec.wavelength);
  spec.length = get_number(obj, "trajectory", "length_m", spec.length);
  spec.speed = get_number(obj, "trajectory", "speed_mps", spec.speed);
  spec.spacing = get_number(obj, "trajectory", "spacing_m", spec.spacing);
  if (obj.contains("waypoints")) {
    const auto& w = obj.at("waypoints");
    if (!w.is_array()) {
      throw ConfigError("'trajectory.waypoints' must be an array of [x, y] pairs");
    }
    for (const auto& p : w) {
      if (!p.is_array() || p.size() != 2) {
        throw ConfigError("'trajectory.waypoints' must be an array of [x, y] pairs");
      }
      spec.waypoints.emplace_back(as_number(p.at(0), "trajectory", "waypoints"),
                                  as_number(p.at(1), "trajectory", "waypoints"));
    }
  }
  return spec;
}

vehicle::VehicleParams parse_vehicle(const json& obj,
                                     vehicle::VehicleParams base) {
  check_keys(obj, "vehicle",
             {"r_wheel", "i_wheel", "l", "gamma", "tau_0", "omega_0", "c_0",
              "c_1", "delta_max"});
  base.r_wheel = get_number(obj, "vehicle", "r_wheel", base.r_wheel);
  base.i_wheel = get_number(obj, "vehicle", "i_wheel", base.i_wheel);
  base.l = get_number(obj, "vehicle", "l", base.l);
  base.gamma = get_number(obj, "vehicle", "gamma", base.gamma);
  base.tau_0 = get_number(obj, "vehicle", "tau_0", base.tau_0);
  base.omega_0 = get_number(obj, "vehicle", "omega_0", base.omega_0);
  base.c_0 = get_number(obj, "vehicle", "c_0", base.c_0);
  base.c_1 = get_number(obj, "vehicle", "c_1", base.c_1);
  base.delta_max = get_number(obj, "vehicle", "delta_max", base.delta_max);
  return base;
}

PlantPerturbation parse_perturbation(const json& obj) {
  check_keys(obj, "plant_perturbation",
             {"r_wheel", "i_wheel", "l", "gamma", "tau_0", "omega_0", "c_0",
              "c_1"});
  PlantPerturbation s;
  s.r_wheel = get_number(obj, "plant_perturbation", "r_wheel", 1.0);
  s.i_wheel = get_number(obj, "plant_perturbation", "i_wheel", 1.0);
  s.l = get_number(obj, "plant_perturbation", "l", 1.0);
  s.gamma = get_number(obj, "plant_perturbation", "gamma", 1.0);
  s.tau_0 = get_number(obj, "plant_perturbation", "tau_0", 1.0);
  s.omega_0 = get_number(obj, "plant_perturbation", "omega_0", 1.0);
  s.c_0 = get_number(obj, "plant_perturbation", "c_0", 1.0);
  s.c_1 = get_number(obj, "plant_perturbation", "c_1", 1.0);
  return s;
}

}  // namespace

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::ekf_only: return "ekf_only";
    case Mode::mpc_privileged: return "mpc_privileged";
    case Mode::ekf_mpc: return "ekf_mpc";
  }
  return "unknown";
}

Mode mode_from_name(const std::string& s) {
  if (s == "ekf_only") return Mode::ekf_only;
  if (s == "mpc_privileged") return Mode::mpc_privileged;
  if (s == "ekf_mpc") return Mode::ekf_mpc;
  throw ConfigError("'mode' must be ekf_only, mpc_privileged, or ekf_mpc");
}

Scenario scenario_from_json(const json& j) {
  check_keys(j, "config",
             {"schema_version", "name", "mode", "duration_s", "dt_s",
              "trajectory", "vehicle", "plant_perturbation", "gps",
              "magnetometer", "origin", "ekf", "mpc", "fixed_input",
              "initial_state", "metrics"});
  if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer() ||
      j.at("schema_version").get<int>() != 1) {
    throw ConfigError("'schema_version' must be present and equal to 1");
  }

  Scenario scn;
  scn.name = get_string(j, "config", "name", scn.name);
  if (j.contains("mode")) {
    scn.mode = mode_from_name(get_string(j, "config", "mode", ""));
  }
  scn.duration_s = get_number(j, "config", "duration_s", scn.duration_s);
  scn.dt_s = get_number(j, "config", "dt_s", scn.dt_s);

  if (!j.contains("trajectory")) {
    throw ConfigError("missing required key 'trajectory'");
  }
  scn.trajectory = parse_trajectory(j.at("trajectory"));

  if (j.contains("vehicle")) {
    scn.vehicle = parse_vehicle(j.at("vehicle"), scn.vehicle);
  }
  if (j.contains("plant_perturbation")) {
    scn.plant_perturbation = parse_perturbation(j.at("plant_perturbation"));
  }

  if (j.contains("gps")) {
    const auto& g = j.at("gps");
    check_keys(g, "gps", {"rate_hz", "sigma_m", "p_max_m", "seed"});
    scn.gps_rate_hz = get_number(g, "gps", "rate_hz", scn.gps_rate_hz);
    scn.gps_noise.sigma = get_number(g, "gps", "sigma_m", scn.gps_noise.sigma);
    scn.gps_noise.p_max = get_number(g, "gps", "p_max_m", scn.gps_noise.p_max);
    scn.gps_noise.seed = get_seed(g, "gps", "seed", scn.gps_noise.seed);
  }
  if (j.contains("magnetometer")) {
    const auto& m = j.at("magnetometer");
    check_keys(m, "magnetometer", {"rate_hz", "sigma_rad", "seed"});
    scn.mag_rate_hz = get_number(m, "magnetometer", "rate_hz", scn.mag_rate_hz);
    scn.magnetometer.sigma_theta =
        get_number(m, "magnetometer", "sigma_rad", scn.magnetometer.sigma_theta);
    scn.magnetometer.seed = get_seed(m, "magnetometer", "seed", scn.magnetometer.seed);
  }
  if (j.contains("origin")) {
    const auto& o = j.at("origin");
    check_keys(o, "origin", {"lat_deg", "lon_deg", "alt_m"});
    scn.origin.lat_deg = require_number(o, "origin", "lat_deg");
    scn.origin.lon_deg = require_number(o, "origin", "lon_deg");
    scn.origin.alt_m = get_number(o, "origin", "alt_m", 0.0);
  }

  if (j.contains("ekf")) {
    const auto& e = j.at("ekf");
    check_keys(e, "ekf", {"p0_diag", "q_diag", "gps_sigma_m", "heading_sigma_rad"});
    const Eigen::VectorXd p0 =
        get_diag(e, "ekf", "p0_diag", scn.ekf.p0.diagonal());
    const Eigen::VectorXd qd =
        get_diag(e, "ekf", "q_diag", scn.ekf.q_process.diagonal());
    scn.ekf.p0 = p0.asDiagonal();
    scn.ekf.q_process = qd.asDiagonal();
    const double gs = get_number(e, "ekf", "gps_sigma_m",
                                 std::sqrt(scn.ekf.r_gps(0, 0)));
    scn.ekf.r_gps = Eigen::Matrix2d::Identity() * gs * gs;
    const double hs = get_number(e, "ekf", "heading_sigma_rad",
                                 std::sqrt(scn.ekf.r_heading));
    scn.ekf.r_heading = hs * hs;
  }

  if (j.contains("mpc")) {
    const auto& m = j.at("mpc");
    check_keys(m, "mpc",
               {"horizon", "q_diag", "r_diag", "e_bound", "lookahead", "solver"});
    scn.mpc.horizon = get_int(m, "mpc", "horizon", scn.mpc.horizon);
    scn.mpc.lookahead = get_int(m, "mpc", "lookahead", scn.mpc.lookahead);
    scn.mpc.q_weight =
        Eigen::Vector4d(get_diag(m, "mpc", "q_diag", scn.mpc.q_weight.diagonal()))
            .asDiagonal();
    scn.mpc.r_weight =
        Eigen::Vector2d(get_diag(m, "mpc", "r_diag", scn.mpc.r_weight.diagonal()))
            .asDiagonal();
    scn.mpc.e_bound = get_diag(m, "mpc", "e_bound", scn.mpc.e_bound);
    if (m.contains("solver")) {
      const auto& s = m.at("solver");
      check_keys(s, "mpc.solver",
                 {"rho", "sigma", "alpha", "eps", "eps_infeasible",
                  "max_iterations", "polish"});
      scn.mpc.solver.rho = get_number(s, "mpc.solver", "rho", scn.mpc.solver.rho);
      scn.mpc.solver.sigma =
          get_number(s, "mpc.solver", "sigma", scn.mpc.solver.sigma);
      scn.mpc.solver.alpha =
          get_number(s, "mpc.solver", "alpha", scn.mpc.solver.alpha);
      scn.mpc.solver.eps = get_number(s, "mpc.solver", "eps", scn.mpc.solver.eps);
      scn.mpc.solver.eps_infeasible = get_number(
          s, "mpc.solver", "eps_infeasible", scn.mpc.solver.eps_infeasible);
      scn.mpc.solver.max_iterations =
          get_int(s, "mpc.solver", "max_iterations", scn.mpc.solver.max_iterations);
      scn.mpc.solver.polish =
          get_bool(s, "mpc.solver", "polish", scn.mpc.solver.polish);
    }
  }

  if (j.contains("fixed_input")) {
    const auto& f = j.at("fixed_input");
    check_keys(f, "fixed_input", {"alpha", "delta"});
    vehicle::ControlInput u;
    u.alpha = require_number(f, "fixed_input", "alpha");
    u.delta = require_number(f, "fixed_input", "delta");
    scn.fixed_input = u;
  }
  if (j.contains("initial_state")) {
    const auto& s = j.at("initial_state");
    check_keys(s, "initial_state", {"x", "y", "theta", "v"});
    vehicle::VehicleState q;
    q.x = require_number(s, "initial_state", "x");
    q.y = require_number(s, "initial_state", "y");
    q.theta = require_number(s, "initial_state", "theta");
    q.v = require_number(s, "initial_state", "v");
    scn.initial_state = q;
  }
  if (j.contains("metrics")) {
    const auto& m = j.at("metrics");
    check_keys(m, "metrics", {"skip_s"});
    scn.metrics_skip_s = get_number(m, "metrics", "skip_s", 0.0);
  }
  return scn;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return scenario_from_json(j);
}

void Scenario::validate() const {
  if (!(duration_s > 0.0) || !std::isfinite(duration_s)) {
    throw ConfigError("'duration_s' must be positive");
  }
  if (!(dt_s > 0.0) || dt_s > 1.0) {
    throw ConfigError("'dt_s' must lie in (0, 1]");
  }
  auto check_rate = [&](double rate, const char* what) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
      throw ConfigError(std::string("'") + what + "' must be positive");
    }
    const double every = 1.0 / (rate * dt_s);
    if (every < 1.0 - 1e-9 || std::abs(every - std::round(every)) > 1e-6) {
      throw ConfigError(std::string("'") + what +
                        "' must divide the simulation step grid");
    }
  };
  check_rate(gps_rate_hz, "gps.rate_hz");
  check_rate(mag_rate_hz, "magnetometer.rate_hz");
  if (!(metrics_skip_s >= 0.0) || metrics_skip_s >= duration_s) {
    throw ConfigError("'metrics.skip_s' must lie in [0, duration_s)");
  }
  try {
    vehicle.validate();
    perturbed(vehicle, plant_perturbation).validate();
    gps_noise.validate();
    mpc.validate();
    // A trajectory speed the drivetrain cannot hold is a config error.
    vehicle::steady_state_throttle(trajectory.speed, vehicle);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(magnetometer.sigma_theta >= 0.0) ||
      !std::isfinite(magnetometer.sigma_theta)) {
    throw ConfigError("'magnetometer.sigma_rad' must be non-negative");
  }
  if (!(trajectory.speed > 0.0) || !(trajectory.spacing > 0.0)) {
    throw ConfigError("trajectory speed and spacing must be positive");
  }
  switch (trajectory.kind) {
    case TrajectorySpec::Kind::circle:
      if (!(trajectory.radius > 0.0) || !(trajectory.arc_deg > 0.0) ||
          trajectory.arc_deg > 360.0) {
        throw ConfigError("circle needs radius_m > 0 and arc_deg in (0, 360]");
      }
      break;
    case TrajectorySpec::Kind::sinusoid:
      if (!(trajectory.wavelength > 0.0) || !(trajectory.length > 0.0)) {
        throw ConfigError("sinusoid needs wavelength_m > 0 and length_m > 0");
      }
      break;
    case TrajectorySpec::Kind::waypoints:
      if (trajectory.waypoints.size() < 2) {
        throw ConfigError("waypoint trajectory needs at least two points");
      }
      break;
  }
  if (fixed_input) {
    if (mode != Mode::ekf_only) {
      throw ConfigError("'fixed_input' only applies to ekf_only mode");
    }
    if (fixed_input->alpha < 0.0 || fixed_input->alpha > 1.0 ||
        std::abs(fixed_input->delta) > vehicle.delta_max) {
      throw ConfigError("'fixed_input' outside the input limits");
    }
  }
  if (initial_state &&
      (!std::isfinite(initial_state->x) || !std::isfinite(initial_state->y) ||
       !std::isfinite(initial_state->theta) || initial_state->v < 0.0)) {
    throw ConfigError("'initial_state' must be finite with v >= 0");
  }
  try {
    geo::make_ltp(origin);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const Eigen::Vector4d p0d = ekf.p0.diagonal();
  const Eigen::Vector4d qd = ekf.q_process.diagonal();
  if ((p0d.array() < 0.0).any() || (qd.array() < 0.0).any() ||
      !(ekf.r_gps(0, 0) > 0.0) || !(ekf.r_heading > 0.0)) {
    throw ConfigError("estimator covariances must be non-negative, sensor "
                      "variances positive");
  }
}

vehicle::VehicleParams perturbed(const vehicle::VehicleParams& nominal,
                                 const PlantPerturbation& scale) {
  vehicle::VehicleParams p = nominal;
  p.r_wheel *= scale.r_wheel;
  p.i_wheel *= scale.i_wheel;
  p.l *= scale.l;
  p.gamma *= scale.gamma;
  p.tau_0 *= scale.tau_0;
  p.omega_0 *= scale.omega_0;
  p.c_0 *= scale.c_0;
  p.c_1 *= scale.c_1;
  return p;
}

traj::Trajectory build_trajectory(const Scenario& scn) {
  const auto& t = scn.trajectory;
  switch (t.kind) {
    case TrajectorySpec::Kind::circle:
      return traj::generate_circle(t.radius, t.speed, t.spacing, scn.vehicle,
                                   deg2rad(t.arc_deg));
    case TrajectorySpec::Kind::sinusoid:
      return traj::generate_sinusoid(t.amplitude, t.wavelength, t.length,
                                     t.speed, t.spacing, scn.vehicle);
    case TrajectorySpec::Kind::waypoints:
      return traj::from_waypoints(t.waypoints, t.speed, scn.vehicle);
  }
  throw ConfigError("unsupported trajectory kind");
}

}  // namespace navsim::sim
