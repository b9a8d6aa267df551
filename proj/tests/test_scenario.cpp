#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "navsim/scenario.hpp"

using namespace navsim;
using nlohmann::json;

namespace {

json minimal() {
  return json{{"schema_version", 1}, {"trajectory", {{"kind", "circle"}}}};
}

}  // namespace

TEST_CASE("minimal config parses with documented defaults") {
  const auto scn = sim::scenario_from_json(minimal());
  CHECK(scn.name == "run");
  CHECK(scn.mode == sim::Mode::ekf_mpc);
  CHECK(scn.duration_s == 10.0);
  CHECK(scn.dt_s == 0.1);
  CHECK(scn.trajectory.kind == sim::TrajectorySpec::Kind::circle);
  CHECK(scn.trajectory.radius == 5.0);
  CHECK(scn.trajectory.speed == 1.0);
  CHECK(scn.gps_rate_hz == 10.0);
  CHECK(scn.gps_noise.sigma == 0.05);
  CHECK(scn.gps_noise.p_max == 2.0);
  CHECK(scn.gps_noise.seed == 1);
  CHECK(scn.magnetometer.sigma_theta == 0.02);
  CHECK(scn.mag_rate_hz == 10.0);
  CHECK(scn.origin.lat_deg == doctest::Approx(47.3667));
  CHECK(scn.mpc.horizon == 10);
  CHECK_FALSE(scn.fixed_input.has_value());
  CHECK_FALSE(scn.initial_state.has_value());
  CHECK(scn.metrics_skip_s == 0.0);
  scn.validate();
}

TEST_CASE("schema version is mandatory and pinned") {
  json j = minimal();
  j.erase("schema_version");
  CHECK_THROWS_AS(sim::scenario_from_json(j), sim::ConfigError);
  j["schema_version"] = 2;
  CHECK_THROWS_AS(sim::scenario_from_json(j), sim::ConfigError);
  j["schema_version"] = "1";
  CHECK_THROWS_AS(sim::scenario_from_json(j), sim::ConfigError);
}

TEST_CASE("unknown keys are rejected at every level") {
  json j = minimal();
  j["surprise"] = 1;
  CHECK_THROWS_WITH_AS(sim::scenario_from_json(j),
                       "unknown key 'config.surprise'", sim::ConfigError);

  j = minimal();
  j["trajectory"]["bogus"] = 1;
  CHECK_THROWS_WITH_AS(sim::scenario_from_json(j),
                       "unknown key 'trajectory.bogus'", sim::ConfigError);

  j = minimal();
  j["gps"] = {{"rate_hz", 10.0}, {"typo_m", 0.1}};
  CHECK_THROWS_WITH_AS(sim::scenario_from_json(j),
                       "unknown key 'gps.typo_m'", sim::ConfigError);

  j = minimal();
  j["mpc"] = {{"solver", {{"omega", 1.0}}}};
  CHECK_THROWS_WITH_AS(sim::scenario_from_json(j),
                       "unknown key 'mpc.solver.omega'", sim::ConfigError);
}

TEST_CASE("type mismatches name the offending key") {
  json j = minimal();
  j["duration_s"] = "long";
  CHECK_THROWS_AS(sim::scenario_from_json(j), sim::ConfigError);

  j = minimal();
  j["gps"] = {{"seed", -3}};
  CHECK_THROWS_AS(sim::scenario_from_json(j), sim::ConfigError);

  j = minimal();
  j["mpc"] = {{"horizon", 2.5}};
  CHECK_THROWS_AS(sim::scenario_from_json(j), sim::ConfigError);

  j = minimal();
  j["ekf"] = {{"p0_diag", {1.0, 2.0, 3.0}}};  // needs four entries
  CHECK_THROWS_AS(sim::scenario_from_json(j), sim::ConfigError);

  j = minimal();
  j["trajectory"]["kind"] = "spiral";
  CHECK_THROWS_AS(sim::scenario_from_json(j), sim::ConfigError);

  j = minimal();
  j["trajectory"]["waypoints"] = {1.0, 2.0};  // not [x, y] pairs
  j["trajectory"]["kind"] = "waypoints";
  CHECK_THROWS_AS(sim::scenario_from_json(j), sim::ConfigError);
}

TEST_CASE("nested sections override defaults") {
  json j = minimal();
  j["name"] = "tight_circle";
  j["mode"] = "mpc_privileged";
  j["duration_s"] = 31.4;
  j["trajectory"] = {{"kind", "circle"}, {"radius_m", 3.0}, {"speed_mps", 0.8},
                     {"spacing_m", 0.05}};
  j["gps"] = {{"rate_hz", 5.0}, {"sigma_m", 0.1}, {"p_max_m", 4.0}, {"seed", 42}};
  j["magnetometer"] = {{"rate_hz", 10.0}, {"sigma_rad", 0.05}, {"seed", 43}};
  j["ekf"] = {{"p0_diag", {1, 1, 1, 1}}, {"q_diag", {0.1, 0.1, 0.1, 0.1}},
              {"gps_sigma_m", 1.2}, {"heading_sigma_rad", 0.1}};
  j["mpc"] = {{"horizon", 15}, {"q_diag", {20, 20, 5, 1}},
              {"e_bound", {5, 5, 3.14, 4}},
              {"solver", {{"max_iterations", 500}, {"polish", false}}}};
  j["plant_perturbation"] = {{"tau_0", 0.9}, {"c_0", 1.5}};
  j["metrics"] = {{"skip_s", 5.0}};

  const auto scn = sim::scenario_from_json(j);
  CHECK(scn.name == "tight_circle");
  CHECK(scn.mode == sim::Mode::mpc_privileged);
  CHECK(scn.trajectory.radius == 3.0);
  CHECK(scn.trajectory.speed == 0.8);
  CHECK(scn.gps_rate_hz == 5.0);
  CHECK(scn.gps_noise.sigma == 0.1);
  CHECK(scn.gps_noise.seed == 42);
  CHECK(scn.magnetometer.sigma_theta == 0.05);
  CHECK(scn.ekf.r_gps(0, 0) == doctest::Approx(1.44));
  CHECK(scn.ekf.r_heading == doctest::Approx(0.01));
  CHECK(scn.ekf.p0(0, 0) == 1.0);
  CHECK(scn.mpc.horizon == 15);
  CHECK(scn.mpc.q_weight(0, 0) == 20.0);
  CHECK(scn.mpc.e_bound(3) == 4.0);
  CHECK(scn.mpc.solver.max_iterations == 500);
  CHECK_FALSE(scn.mpc.solver.polish);
  CHECK(scn.plant_perturbation.tau_0 == 0.9);
  CHECK(scn.plant_perturbation.c_0 == 1.5);
  CHECK(scn.metrics_skip_s == 5.0);
  scn.validate();
}

TEST_CASE("sensor rates must land on the simulation step grid") {
  auto scn = sim::scenario_from_json(minimal());
  scn.gps_rate_hz = 3.0;  // 0.333 s period at dt 0.1: off-grid
  CHECK_THROWS_AS(scn.validate(), sim::ConfigError);
  scn.gps_rate_hz = 20.0;  // faster than the step itself
  CHECK_THROWS_AS(scn.validate(), sim::ConfigError);
  scn.gps_rate_hz = 5.0;
  scn.validate();
  scn.mag_rate_hz = 7.0;
  CHECK_THROWS_AS(scn.validate(), sim::ConfigError);
}

TEST_CASE("cross-field validation catches inconsistent scenarios") {
  auto scn = sim::scenario_from_json(minimal());

  SUBCASE("nonpositive duration") {
    scn.duration_s = 0.0;
    CHECK_THROWS_AS(scn.validate(), sim::ConfigError);
  }
  SUBCASE("metrics skip beyond the run") {
    scn.metrics_skip_s = 10.0;
    CHECK_THROWS_AS(scn.validate(), sim::ConfigError);
  }
  SUBCASE("fixed input outside ekf_only mode") {
    scn.fixed_input = vehicle::ControlInput{0.2, 0.0};
    CHECK_THROWS_AS(scn.validate(), sim::ConfigError);
    scn.mode = sim::Mode::ekf_only;
    scn.validate();
  }
  SUBCASE("fixed input outside the input limits") {
    scn.mode = sim::Mode::ekf_only;
    scn.fixed_input = vehicle::ControlInput{0.2, 0.9};
    CHECK_THROWS_AS(scn.validate(), sim::ConfigError);
  }
  SUBCASE("reference speed the drivetrain cannot hold") {
    scn.trajectory.speed = 30.0;
    CHECK_THROWS_AS(scn.validate(), sim::ConfigError);
  }
  SUBCASE("polar origin") {
    scn.origin.lat_deg = 89.5;
    CHECK_THROWS_AS(scn.validate(), sim::ConfigError);
  }
  SUBCASE("negative process covariance") {
    scn.ekf.q_process(1, 1) = -1e-4;
    CHECK_THROWS_AS(scn.validate(), sim::ConfigError);
  }
  SUBCASE("full circle arc only") {
    scn.trajectory.arc_deg = 400.0;
    CHECK_THROWS_AS(scn.validate(), sim::ConfigError);
  }
}

TEST_CASE("mode names round-trip") {
  for (const auto m : {sim::Mode::ekf_only, sim::Mode::mpc_privileged,
                       sim::Mode::ekf_mpc}) {
    CHECK(sim::mode_from_name(sim::mode_name(m)) == m);
  }
  CHECK_THROWS_AS(sim::mode_from_name("autopilot"), sim::ConfigError);
}

TEST_CASE("plant perturbation scales only the requested parameters") {
  vehicle::VehicleParams nominal;
  sim::PlantPerturbation s;
  s.tau_0 = 0.8;
  s.c_0 = 2.0;
  const auto p = sim::perturbed(nominal, s);
  CHECK(p.tau_0 == doctest::Approx(nominal.tau_0 * 0.8));
  CHECK(p.c_0 == doctest::Approx(nominal.c_0 * 2.0));
  CHECK(p.r_wheel == nominal.r_wheel);
  CHECK(p.l == nominal.l);
  CHECK(p.delta_max == nominal.delta_max);
}

TEST_CASE("trajectory builder dispatches on kind") {
  auto scn = sim::scenario_from_json(minimal());
  const auto circle = sim::build_trajectory(scn);
  CHECK(circle.size() > 100);

  scn.trajectory.kind = sim::TrajectorySpec::Kind::sinusoid;
  const auto sine = sim::build_trajectory(scn);
  CHECK(sine.back().x == doctest::Approx(scn.trajectory.length));

  scn.trajectory.kind = sim::TrajectorySpec::Kind::waypoints;
  scn.trajectory.waypoints = {{0, 0}, {1, 0}, {2, 1}};
  const auto wp = sim::build_trajectory(scn);
  CHECK(wp.size() == 3);
}

TEST_CASE("scenario files load with errors mapped to ConfigError") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "navsim_scn_test";
  fs::create_directories(dir);

  const fs::path good = dir / "good.json";
  {
    std::ofstream out(good);
    out << minimal().dump(2);
  }
  const auto scn = sim::load_scenario(good.string());
  CHECK(scn.trajectory.kind == sim::TrajectorySpec::Kind::circle);

  const fs::path bad = dir / "bad.json";
  {
    std::ofstream out(bad);
    out << "{ not json";
  }
  CHECK_THROWS_AS(sim::load_scenario(bad.string()), sim::ConfigError);
  CHECK_THROWS_AS(sim::load_scenario((dir / "missing.json").string()),
                  sim::ConfigError);
  fs::remove_all(dir);
}
