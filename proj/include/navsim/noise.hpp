#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "navsim/random.hpp"

namespace navsim::noise {

/// Parameters of the bounded random-walk error model used per GPS axis.
struct GpsNoiseParams {
  double sigma = 0.05;   ///< std dev of the per-step acceleration draw [m]
  double p_max = 2.0;    ///< soft bound that pulls the walk back toward zero [m]
  std::uint64_t seed = 1;

  void validate() const;
};

/// One axis of the walk: position offset p and its velocity v.
struct GpsNoiseState {
  double p = 0.0;
  double v = 0.0;
};

/// Advances one step. The acceleration is drawn with mean -p/p_max, so the
/// walk is pulled back toward zero the further it strays, and feeds both the
/// velocity and the position in the same step:
///   a ~ N(-p/p_max, sigma),  v' = v + a,  p' = p + v + a.
GpsNoiseState noise_step(const GpsNoiseState& s, const GpsNoiseParams& params,
                         rng::NormalSource& draw);

/// A self-contained per-axis chain with its own generator.
class GpsAxisChain {
 public:
  GpsAxisChain(const GpsNoiseParams& params, std::uint64_t chain_seed)
      : params_(params), stream_(chain_seed) {
    params.validate();
  }

  /// Steps the walk and returns the new position offset.
  double step() {
    state_ = noise_step(state_, params_, stream_);
    return state_.p;
  }

  const GpsNoiseState& state() const { return state_; }

 private:
  GpsNoiseParams params_;
  GpsNoiseState state_;
  rng::GaussianStream stream_;
};

/// Position-offset series of a single chain seeded with derive_seed(seed, 0).
std::vector<double> chain_series(const GpsNoiseParams& params,
                                 std::size_t n_steps);

/// Lag-1 autocorrelation of a series (mean removed). Needs at least 3
/// samples and nonzero variance; throws std::invalid_argument otherwise.
double lag1_autocorr(const std::vector<double>& series);

/// Pooled statistics over an ensemble of independent chains.
struct EnsembleStats {
  double mean = 0.0;         ///< grand mean of p over all chains and steps
  double se_mean = 0.0;      ///< standard error of that mean (via chain means)
  double p99_abs = 0.0;      ///< 99th percentile of |p| over the pool
  std::size_t samples = 0;
};

/// Monte-Carlo ensemble: n_chains independent chains, each stepped n_steps
/// times, chain i seeded with derive_seed(params.seed, i). Chains are
/// distributed across OpenMP threads; results are identical to the serial
/// variant because every chain owns its generator.
EnsembleStats ensemble_stats(const GpsNoiseParams& params, std::size_t n_chains,
                             std::size_t n_steps);

/// Single-threaded reference implementation of ensemble_stats.
EnsembleStats ensemble_stats_serial(const GpsNoiseParams& params,
                                    std::size_t n_chains, std::size_t n_steps);

}  // namespace navsim::noise
