#include "navsim/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace navsim::noise {

void GpsNoiseParams::validate() const {
  if (!std::isfinite(sigma) || sigma < 0.0) {
    throw std::invalid_argument("noise sigma must be non-negative");
  }
  if (!std::isfinite(p_max) || p_max <= 0.0) {
    throw std::invalid_argument("noise p_max must be positive");
  }
}

GpsNoiseState noise_step(const GpsNoiseState& s, const GpsNoiseParams& params,
                         rng::NormalSource& draw) {
  const double a = draw.normal(-s.p / params.p_max, params.sigma);
  GpsNoiseState next;
  next.v = s.v + a;
  next.p = s.p + s.v + a;
  return next;
}

std::vector<double> chain_series(const GpsNoiseParams& params,
                                 std::size_t n_steps) {
  GpsAxisChain chain(params, rng::derive_seed(params.seed, 0));
  std::vector<double> out(n_steps);
  for (std::size_t i = 0; i < n_steps; ++i) out[i] = chain.step();
  return out;
}

double lag1_autocorr(const std::vector<double>& series) {
  const std::size_t n = series.size();
  if (n < 3) throw std::invalid_argument("autocorrelation needs >= 3 samples");
  double mean = 0.0;
  for (double x : series) mean += x;
  mean /= static_cast<double>(n);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = series[i] - mean;
    den += d * d;
    if (i + 1 < n) num += d * (series[i + 1] - mean);
  }
  if (den <= 0.0) throw std::invalid_argument("series has zero variance");
  return num / den;
}

namespace {

struct ChainAccumulator {
  double mean = 0.0;
};

// Runs one chain and stores |p| for every step into pool[offset..].
ChainAccumulator run_chain(const GpsNoiseParams& params, std::size_t index,
                           std::size_t n_steps, float* pool) {
  GpsAxisChain chain(params, rng::derive_seed(params.seed, index));
  double sum = 0.0;
  for (std::size_t j = 0; j < n_steps; ++j) {
    const double p = chain.step();
    sum += p;
    pool[j] = static_cast<float>(std::abs(p));
  }
  return {sum / static_cast<double>(n_steps)};
}

EnsembleStats finalize(std::vector<float>& abs_pool,
                       const std::vector<double>& chain_mean) {
  const std::size_t n_chains = chain_mean.size();
  EnsembleStats stats;
  stats.samples = abs_pool.size();

  double mean = 0.0;
  for (double m : chain_mean) mean += m;
  mean /= static_cast<double>(n_chains);
  stats.mean = mean;

  // Chains are independent, so the chain means give a clean standard error
  // even though samples within a chain are correlated.
  double var = 0.0;
  for (double m : chain_mean) var += (m - mean) * (m - mean);
  var /= static_cast<double>(n_chains - 1);
  stats.se_mean = std::sqrt(var / static_cast<double>(n_chains));

  const std::size_t rank =
      static_cast<std::size_t>(
          std::ceil(0.99 * static_cast<double>(abs_pool.size()))) - 1;
  std::nth_element(abs_pool.begin(),
                   abs_pool.begin() + static_cast<std::ptrdiff_t>(rank),
                   abs_pool.end());
  stats.p99_abs = static_cast<double>(abs_pool[rank]);
  return stats;
}

void check_sizes(std::size_t n_chains, std::size_t n_steps) {
  if (n_chains < 2 || n_steps == 0) {
    throw std::invalid_argument("ensemble needs >= 2 chains and >= 1 step");
  }
}

}  // namespace

EnsembleStats ensemble_stats(const GpsNoiseParams& params, std::size_t n_chains,
                             std::size_t n_steps) {
  params.validate();
  check_sizes(n_chains, n_steps);
  std::vector<float> abs_pool(n_chains * n_steps);
  std::vector<double> chain_mean(n_chains);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n_chains); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    chain_mean[idx] =
        run_chain(params, idx, n_steps, abs_pool.data() + idx * n_steps).mean;
  }
  return finalize(abs_pool, chain_mean);
}

EnsembleStats ensemble_stats_serial(const GpsNoiseParams& params,
                                    std::size_t n_chains, std::size_t n_steps) {
  params.validate();
  check_sizes(n_chains, n_steps);
  std::vector<float> abs_pool(n_chains * n_steps);
  std::vector<double> chain_mean(n_chains);
  for (std::size_t i = 0; i < n_chains; ++i) {
    chain_mean[i] =
        run_chain(params, i, n_steps, abs_pool.data() + i * n_steps).mean;
  }
  return finalize(abs_pool, chain_mean);
}

}  // namespace navsim::noise
