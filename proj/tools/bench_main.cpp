// Compares the OpenMP kernels against their serial reference
// implementations: same inputs, checked-equal outputs, wall time and
// speedup per kernel.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "navsim/metrics.hpp"
#include "navsim/noise.hpp"
#include "navsim/scenario.hpp"
#include "navsim/simulate.hpp"
#include "navsim/trajectory.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = clock_type::now();
    fn();
    const auto t1 = clock_type::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial_s, double parallel_s, bool match) {
  std::printf("%-22s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx   %s\n",
              name, serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s,
              match ? "outputs match" : "OUTPUTS DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; parallel kernels run serially\n");
#endif

  // Kernel 1: point-to-polyline distances.
  {
    navsim::vehicle::VehicleParams vp;
    const auto path = navsim::traj::generate_circle(5.0, 1.0, 0.02, vp);
    std::vector<Eigen::Vector2d> poly;
    for (const auto& p : path) poly.push_back(p.xy());
    std::vector<Eigen::Vector2d> pts;
    for (int i = 0; i < 20000; ++i) {
      const double a = 0.001 * i;
      pts.emplace_back(5.2 * std::sin(a), 5.2 * (1.0 - std::cos(a)));
    }
    std::vector<double> ref_out, par_out;
    const double ts = time_best_of(
        3, [&] { ref_out = navsim::metrics::polyline_distances_serial(pts, poly); });
    const double tp = time_best_of(
        3, [&] { par_out = navsim::metrics::polyline_distances(pts, poly); });
    report("polyline_distances", ts, tp, ref_out == par_out);
  }

  // Kernel 2: noise-model Monte Carlo ensemble.
  {
    navsim::noise::GpsNoiseParams np;
    navsim::noise::EnsembleStats ref_stats, par_stats;
    const double ts = time_best_of(3, [&] {
      ref_stats = navsim::noise::ensemble_stats_serial(np, 20000, 200);
    });
    const double tp = time_best_of(3, [&] {
      par_stats = navsim::noise::ensemble_stats(np, 20000, 200);
    });
    const bool match = ref_stats.mean == par_stats.mean &&
                       ref_stats.p99_abs == par_stats.p99_abs;
    report("noise ensemble", ts, tp, match);
  }

  // Kernel 3: batch of closed-loop runs.
  {
    navsim::sim::Scenario scn;
    scn.name = "bench";
    scn.mode = navsim::sim::Mode::ekf_mpc;
    scn.duration_s = 10.0;
    scn.trajectory.kind = navsim::sim::TrajectorySpec::Kind::circle;
    scn.trajectory.radius = 5.0;
    std::vector<navsim::sim::BatchRun> ref_runs, par_runs;
    const double ts = time_best_of(
        2, [&] { ref_runs = navsim::sim::run_batch_serial(scn, 8, 1); });
    const double tp =
        time_best_of(2, [&] { par_runs = navsim::sim::run_batch(scn, 8, 1); });
    bool match = ref_runs.size() == par_runs.size();
    for (std::size_t i = 0; match && i < ref_runs.size(); ++i) {
      match = ref_runs[i].ok == par_runs[i].ok &&
              ref_runs[i].result.metrics.truth_vs_ref.avg ==
                  par_runs[i].result.metrics.truth_vs_ref.avg;
    }
    report("run_batch", ts, tp, match);
  }

  return 0;
}
