#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace navsim::cli {

/// Command-line overrides that beat the config file, which beats defaults.
struct Overrides {
  std::optional<std::uint64_t> seed;  ///< reseeds both sensors
  std::optional<double> duration_s;
  std::optional<double> gps_rate_hz;
};

struct RunOptions {
  std::string config_path;
  Overrides overrides;
  std::string out_dir = "out";
  bool plot = false;
};

struct BatchOptions {
  std::string config_path;
  int runs = 10;
  std::uint64_t seed_stride = 1;
  Overrides overrides;
  std::string out_dir = "out";
  bool save_logs = false;
};

struct PlotOptions {
  std::string log_path;
  std::string traj_path;
  std::string out_path;
};

/// All commands return a process exit code: 0 success, 1 configuration
/// error, 2 runtime failure. Human-readable output goes to `out`,
/// diagnostics to `err`.
int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err);
int cmd_batch(const BatchOptions& opt, std::ostream& out, std::ostream& err);
int cmd_plot(const PlotOptions& opt, std::ostream& out, std::ostream& err);
int cmd_validate(const std::string& config_path, std::ostream& out,
                 std::ostream& err);

}  // namespace navsim::cli
