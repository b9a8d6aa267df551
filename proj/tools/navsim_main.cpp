#include <iostream>

#include <CLI11.hpp>

#include "navsim/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Closed-loop ground-vehicle navigation simulator"};
  app.require_subcommand(1);

  navsim::cli::RunOptions run_opt;
  navsim::cli::BatchOptions batch_opt;
  navsim::cli::PlotOptions plot_opt;
  std::string validate_path;

  auto add_overrides = [](CLI::App* cmd, navsim::cli::Overrides& ov) {
    cmd->add_option("--seed", ov.seed,
                    "Override both sensor seeds (magnetometer seed is "
                    "derived from this value)");
    cmd->add_option("--duration", ov.duration_s, "Override duration [s]");
    cmd->add_option("--gps-rate", ov.gps_rate_hz, "Override GPS rate [Hz]");
  };

  CLI::App* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("config", run_opt.config_path, "Scenario JSON file")
      ->required();
  run->add_option("--out", run_opt.out_dir, "Output directory");
  run->add_flag("--plot", run_opt.plot, "Also write an SVG plot");
  add_overrides(run, run_opt.overrides);

  CLI::App* batch = app.add_subcommand("batch", "Run seed-shifted replicates");
  batch->add_option("config", batch_opt.config_path, "Scenario JSON file")
      ->required();
  batch->add_option("--runs", batch_opt.runs, "Number of replicates");
  batch->add_option("--seed-stride", batch_opt.seed_stride,
                    "Seed shift between replicates");
  batch->add_option("--out", batch_opt.out_dir, "Output directory");
  batch->add_flag("--save-logs", batch_opt.save_logs,
                  "Write a per-tick log for every replicate");
  add_overrides(batch, batch_opt.overrides);

  CLI::App* plot = app.add_subcommand("plot", "Render an SVG from CSV logs");
  plot->add_option("log", plot_opt.log_path, "Run log CSV")->required();
  plot->add_option("traj", plot_opt.traj_path, "Trajectory CSV")->required();
  plot->add_option("--out", plot_opt.out_path, "Output SVG path")->required();

  CLI::App* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("config", validate_path, "Scenario JSON file")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    return navsim::cli::cmd_run(run_opt, std::cout, std::cerr);
  }
  if (batch->parsed()) {
    return navsim::cli::cmd_batch(batch_opt, std::cout, std::cerr);
  }
  if (plot->parsed()) {
    return navsim::cli::cmd_plot(plot_opt, std::cout, std::cerr);
  }
  return navsim::cli::cmd_validate(validate_path, std::cout, std::cerr);
}
