#include "navsim/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "navsim/csv.hpp"
#include "navsim/plot.hpp"
#include "navsim/random.hpp"
#include "navsim/scenario.hpp"
#include "navsim/simulate.hpp"

namespace navsim::cli {

namespace {

namespace fs = std::filesystem;

void apply_overrides(sim::Scenario& scn, const Overrides& ov) {
  if (ov.seed) {
    scn.gps_noise.seed = *ov.seed;
    // Distinct deterministic stream for the magnetometer.
    scn.magnetometer.seed = rng::splitmix64(*ov.seed);
  }
  if (ov.duration_s) scn.duration_s = *ov.duration_s;
  if (ov.gps_rate_hz) scn.gps_rate_hz = *ov.gps_rate_hz;
}

bool load_checked(const std::string& path, const Overrides& ov,
                  sim::Scenario& scn, std::ostream& err) {
  try {
    scn = sim::load_scenario(path);
    apply_overrides(scn, ov);
    scn.validate();
    return true;
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return false;
  }
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  out << content;
  if (!out.flush()) {
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

std::string stat_cell(const metrics::ErrorStats& s, bool want_max) {
  if (s.count == 0) return "         -";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%10.3f", want_max ? s.max : s.avg);
  return buf;
}

void print_metrics(std::ostream& out, const sim::RunMetrics& m) {
  auto line = [&](const char* name, const metrics::ErrorStats& s) {
    if (s.count == 0) return;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "  %-14s avg %7.3f m   max %7.3f m   (n=%zu)",
                  name, s.avg, s.max, s.count);
    out << buf << "\n";
  };
  line("meas_vs_truth", m.meas_vs_truth);
  line("est_vs_truth", m.est_vs_truth);
  line("truth_vs_ref", m.truth_vs_ref);
}

io::PlotSeries series_of(const sim::RunResult& res) {
  io::PlotSeries s;
  for (const auto& p : res.trajectory) s.ref.push_back(p.xy());
  for (const auto& r : res.rows) {
    s.truth.emplace_back(r.truth.x, r.truth.y);
    if (r.est) s.est.emplace_back(r.est->x, r.est->y);
    if (r.meas_xy) s.meas.push_back(*r.meas_xy);
  }
  return s;
}

}  // namespace

int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  sim::Scenario scn;
  if (!load_checked(opt.config_path, opt.overrides, scn, err)) return 1;
  try {
    const sim::RunResult res = sim::run_scenario(scn);

    fs::create_directories(opt.out_dir);
    const fs::path base = fs::path(opt.out_dir) / scn.name;

    std::ostringstream log_csv;
    io::write_run_log(log_csv, res.rows);
    write_text_file(base.string() + "_log.csv", log_csv.str());

    std::ostringstream traj_csv;
    io::write_trajectory(traj_csv, res.trajectory);
    write_text_file(base.string() + "_traj.csv", traj_csv.str());

    std::ostringstream metrics_csv;
    io::write_metrics(metrics_csv, res.metrics);
    write_text_file(base.string() + "_metrics.csv", metrics_csv.str());

    if (opt.plot) {
      io::write_file_atomic(base.string() + ".svg",
                            io::render_svg(series_of(res)));
    }

    out << "run '" << scn.name << "': " << res.rows.size() << " ticks, mode "
        << sim::mode_name(scn.mode) << "\n";
    print_metrics(out, res.metrics);
    out << "wrote " << base.string() << "_log.csv, _traj.csv, _metrics.csv"
        << (opt.plot ? ", .svg" : "") << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_batch(const BatchOptions& opt, std::ostream& out, std::ostream& err) {
  sim::Scenario scn;
  if (!load_checked(opt.config_path, opt.overrides, scn, err)) return 1;
  if (opt.runs < 1) {
    err << "config error: --runs must be >= 1\n";
    return 1;
  }
  try {
    const auto batch = sim::run_batch(scn, opt.runs, opt.seed_stride);

    fs::create_directories(opt.out_dir);
    const fs::path base = fs::path(opt.out_dir) / scn.name;

    out << "batch '" << scn.name << "': " << opt.runs << " runs, mode "
        << sim::mode_name(scn.mode) << "\n";
    out << "  run   meas_avg   meas_max    est_avg    est_max    ref_avg"
           "    ref_max\n";

    std::ostringstream batch_csv;
    batch_csv << "# schema=1\n";
    batch_csv << "run,ok,meas_avg,meas_max,est_avg,est_max,ref_avg,ref_max,error\n";

    int est_avg_wins = 0;
    int est_max_wins = 0;
    int comparable = 0;
    bool any_failed = false;
    for (int i = 0; i < opt.runs; ++i) {
      const auto& b = batch[static_cast<std::size_t>(i)];
      char run_buf[16];
      std::snprintf(run_buf, sizeof(run_buf), "%5d", i + 1);
      if (!b.ok) {
        any_failed = true;
        out << run_buf << "   failed: " << b.error << "\n";
        batch_csv << (i + 1) << ",0,,,,,,," << b.error << "\n";
        continue;
      }
      const auto& m = b.result.metrics;
      out << run_buf << " " << stat_cell(m.meas_vs_truth, false) << " "
          << stat_cell(m.meas_vs_truth, true) << " "
          << stat_cell(m.est_vs_truth, false) << " "
          << stat_cell(m.est_vs_truth, true) << " "
          << stat_cell(m.truth_vs_ref, false) << " "
          << stat_cell(m.truth_vs_ref, true) << "\n";
      batch_csv << (i + 1) << ",1," << io::format_double(m.meas_vs_truth.avg)
                << ',' << io::format_double(m.meas_vs_truth.max) << ','
                << io::format_double(m.est_vs_truth.avg) << ','
                << io::format_double(m.est_vs_truth.max) << ','
                << io::format_double(m.truth_vs_ref.avg) << ','
                << io::format_double(m.truth_vs_ref.max) << ",\n";
      if (m.meas_vs_truth.count > 0 && m.est_vs_truth.count > 0) {
        ++comparable;
        if (m.est_vs_truth.avg < m.meas_vs_truth.avg) ++est_avg_wins;
        if (m.est_vs_truth.max < m.meas_vs_truth.max) ++est_max_wins;
      }

      if (opt.save_logs) {
        char suffix[32];
        std::snprintf(suffix, sizeof(suffix), "_run%02d_log.csv", i + 1);
        std::ostringstream log_csv;
        io::write_run_log(log_csv, b.result.rows);
        write_text_file(base.string() + suffix, log_csv.str());
      }
    }

    if (comparable > 0) {
      out << "estimate beat measurement avg error in " << est_avg_wins << "/"
          << comparable << " runs, max error in " << est_max_wins << "/"
          << comparable << " runs\n";
    }

    write_text_file(base.string() + "_batch.csv", batch_csv.str());
    out << "wrote " << base.string() << "_batch.csv\n";
    if (any_failed) {
      err << "runtime error: one or more batch runs failed\n";
      return 2;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_plot(const PlotOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    auto read_table = [](const std::string& path) {
      std::ifstream in(path);
      if (!in) throw io::CsvError("cannot open '" + path + "'");
      return io::read_csv(in);
    };

    auto xy_series = [](const io::ParsedTable& t, const std::string& xcol,
                        const std::string& ycol) {
      std::vector<Eigen::Vector2d> pts;
      if (!t.has_column(xcol) || !t.has_column(ycol)) return pts;
      const auto xs = t.numeric_column(xcol);
      const auto ys = t.numeric_column(ycol);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isnan(xs[i]) && !std::isnan(ys[i])) {
          pts.emplace_back(xs[i], ys[i]);
        }
      }
      return pts;
    };

    const io::ParsedTable log = read_table(opt.log_path);
    const io::ParsedTable traj = read_table(opt.traj_path);

    io::PlotSeries series;
    series.ref = xy_series(traj, "x", "y");
    series.truth = xy_series(log, "truth_x", "truth_y");
    series.est = xy_series(log, "est_x", "est_y");
    series.meas = xy_series(log, "meas_x", "meas_y");

    io::write_file_atomic(opt.out_path, io::render_svg(series));
    out << "wrote " << opt.out_path << "\n";
    return 0;
  } catch (const io::CsvError& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_validate(const std::string& config_path, std::ostream& out,
                 std::ostream& err) {
  sim::Scenario scn;
  if (!load_checked(config_path, Overrides{}, scn, err)) return 1;
  try {
    const auto path = sim::build_trajectory(scn);
    out << "config ok: '" << scn.name << "', mode " << sim::mode_name(scn.mode)
        << ", " << scn.duration_s << " s at dt " << scn.dt_s << " s, "
        << path.size() << " reference samples over "
        << io::format_double(traj::path_length(path)) << " m\n";
    return 0;
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace navsim::cli
