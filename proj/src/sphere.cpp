#include "widthlab/sphere.hpp"

#include <cmath>
#include <stdexcept>

#include "widthlab/rng.hpp"

namespace widthlab {

RealVector sphere_point(int n, std::uint64_t seed, std::uint64_t pair_index) {
  if (n < 1) throw std::invalid_argument("sample_sphere: n must be >= 1");
  const std::size_t dim = static_cast<std::size_t>(n) + 1;
  // On a (measure-zero) zero draw, move to a fresh sub-stream of the same pair.
  for (std::uint64_t attempt = 0;; ++attempt) {
    rng::Stream s(seed, pair_index * 0x10001ull + attempt);
    RealVector z(dim);
    double norm2 = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      z[j] = s.gaussian();
      norm2 += z[j] * z[j];
    }
    if (norm2 > 1e-300) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (double& v : z) v *= inv;
      return z;
    }
  }
}

std::vector<SphereSample> sample_sphere(int n, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("sample_sphere: count must be positive");
  if (count < 2 || count % 2 != 0) {
    throw std::invalid_argument("sample_sphere: count must be even and >= 2 (antipodal closure)");
  }
  std::vector<SphereSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count / 2; ++i) {
    RealVector z = sphere_point(n, seed, i);
    RealVector neg(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) neg[j] = -z[j];
    out.push_back(SphereSample{std::move(z), seed, 2 * i});
    out.push_back(SphereSample{std::move(neg), seed, 2 * i + 1});
  }
  return out;
}

}  // namespace widthlab
