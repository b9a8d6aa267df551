#include "navsim/random.hpp"

#include <cmath>

#include "navsim/angles.hpp"

namespace navsim::rng {

double GaussianStream::uniform01() {
  // Top 53 bits, shifted into (0, 1] so log() below never sees zero.
  return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
}

double GaussianStream::normal(double mean, double stddev) {
  if (has_spare_) {
    has_spare_ = false;
    return mean + stddev * spare_;
  }
  const double u1 = uniform01();
  const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * kPi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return mean + stddev * r * std::cos(phi);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

}  // namespace navsim::rng
