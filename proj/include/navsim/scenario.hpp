#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "navsim/ekf.hpp"
#include "navsim/geodesy.hpp"
#include "navsim/mpc.hpp"
#include "navsim/noise.hpp"
#include "navsim/sensors.hpp"
#include "navsim/trajectory.hpp"
#include "navsim/vehicle.hpp"

namespace navsim::sim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { ekf_only, mpc_privileged, ekf_mpc };

const char* mode_name(Mode m);
Mode mode_from_name(const std::string& s);

struct TrajectorySpec {
  enum class Kind { circle, sinusoid, waypoints };
  Kind kind = Kind::circle;
  double radius = 5.0;       ///< circle radius [m]
  double arc_deg = 360.0;    ///< circle arc (360 closes the loop)
  double amplitude = 1.0;    ///< sinusoid amplitude [m]
  double wavelength = 8.0;   ///< sinusoid wavelength [m]
  double length = 16.0;      ///< sinusoid extent along x [m]
  std::vector<Eigen::Vector2d> waypoints;
  double speed = 1.0;        ///< reference speed [m/s]
  double spacing = 0.1;      ///< sample spacing [m]
};

/// Per-parameter multipliers applied to the plant only, so the simulated
/// vehicle can differ from the model the estimator and controller assume.
struct PlantPerturbation {
  double r_wheel = 1.0;
  double i_wheel = 1.0;
  double l = 1.0;
  double gamma = 1.0;
  double tau_0 = 1.0;
  double omega_0 = 1.0;
  double c_0 = 1.0;
  double c_1 = 1.0;
};

struct Scenario {
  std::string name = "run";
  Mode mode = Mode::ekf_mpc;
  double duration_s = 10.0;
  double dt_s = 0.1;
  TrajectorySpec trajectory;
  vehicle::VehicleParams vehicle;
  PlantPerturbation plant_perturbation;
  noise::GpsNoiseParams gps_noise;
  double gps_rate_hz = 10.0;
  sensors::MagnetometerParams magnetometer;
  double mag_rate_hz = 10.0;
  geo::GeodeticCoord origin{47.3667, 8.55, 408.0};
  ekf::EkfConfig ekf;
  mpc::MpcConfig mpc;
  /// Constant input for ekf_only mode; defaults to the trajectory's nominal
  /// input at its first sample.
  std::optional<vehicle::ControlInput> fixed_input;
  /// Start pose; defaults to the first trajectory sample.
  std::optional<vehicle::VehicleState> initial_state;
  double metrics_skip_s = 0.0;

  /// Cross-field checks (rates aligned to the step, sane durations, valid
  /// submodule parameters). Throws ConfigError.
  void validate() const;
};

/// Parses a scenario from JSON. Unknown keys anywhere in the document are
/// rejected, as are type mismatches and out-of-range values. Throws
/// ConfigError with a message naming the offending key.
Scenario scenario_from_json(const nlohmann::json& j);

/// Reads and parses a scenario file. Throws ConfigError for unreadable
/// files, JSON syntax errors, and everything scenario_from_json rejects.
Scenario load_scenario(const std::string& path);

/// Vehicle parameters with the perturbation multipliers applied.
vehicle::VehicleParams perturbed(const vehicle::VehicleParams& nominal,
                                 const PlantPerturbation& scale);

/// Builds the reference trajectory described by the scenario.
traj::Trajectory build_trajectory(const Scenario& scn);

}  // namespace navsim::sim
