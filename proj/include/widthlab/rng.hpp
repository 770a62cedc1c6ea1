#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace widthlab::rng {

// splitmix64 output function (Steele, Lea, Flood 2014). Non-cryptographic.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Combines a seed with a stream/counter index into an independent sub-seed.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ mix64(index + 0x632BE59BD9B4E019ull));
}

// Small counter-seeded generator. Every consumer derives its own Stream from
// (seed, index), so draws are indexable and independent of evaluation order.
class Stream {
 public:
  explicit Stream(std::uint64_t state) : state_(state) {}
  Stream(std::uint64_t seed, std::uint64_t index) : state_(substream(seed, index)) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in (0, 1]
  double uniform01() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  // uniform in [0, 1)
  double uniform01_halfopen() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // standard normal pair, Box-Muller
  void gaussian_pair(double& g0, double& g1) {
    const double u1 = uniform01();
    const double u2 = uniform01_halfopen();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    g0 = r * std::cos(theta);
    g1 = r * std::sin(theta);
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double g0, g1;
    gaussian_pair(g0, g1);
    spare_ = g1;
    have_spare_ = true;
    return g0;
  }

  // index in [0, bound)
  std::uint64_t below(std::uint64_t bound) { return next_u64() % bound; }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

inline std::vector<double> gaussian_vector(std::uint64_t seed, std::uint64_t index, std::size_t dim) {
  Stream s(seed, index);
  std::vector<double> out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = s.gaussian();
  return out;
}

}  // namespace widthlab::rng
