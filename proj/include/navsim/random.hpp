#pragma once

#include <cstdint>
#include <random>

namespace navsim::rng {

/// Source of normally distributed draws. The simulator consumes noise only
/// through this interface so tests can substitute recorded or scripted
/// sequences.
class NormalSource {
 public:
  virtual ~NormalSource() = default;
  virtual double normal(double mean, double stddev) = 0;
};

/// Deterministic Gaussian stream: mt19937_64 plus an explicit Box-Muller
/// transform. std::normal_distribution is implementation-defined, so a
/// fixed transform is used instead to make logs reproducible across
/// standard libraries.
class GaussianStream final : public NormalSource {
 public:
  explicit GaussianStream(std::uint64_t seed) : gen_(seed) {}

  double normal(double mean, double stddev) override;

  /// Uniform draw in (0, 1] with 53-bit resolution.
  double uniform01();

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// splitmix64 mixing function. Bijective on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x);

/// Derives an independent stream seed from a base seed and a stream index,
/// so parallel chains get decorrelated generators regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace navsim::rng
