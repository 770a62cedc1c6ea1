#pragma once

#include <cstdint>
#include <vector>

#include "widthlab/vec.hpp"

namespace widthlab {

struct SphereSample {
  RealVector point;     // length n+1, unit l2 norm
  std::uint64_t seed;   // generator seed (provenance)
  std::uint64_t index;  // position in the generated list
};

// `count` unit vectors in R^{n+1}, normalized Gaussians, deterministic in
// (seed, count, n). The list is antipodally closed: entries 2i and 2i+1 are
// exact negations of each other, so oddness checks pair adjacent samples.
// count must be even and >= 2.
std::vector<SphereSample> sample_sphere(int n, std::size_t count, std::uint64_t seed);

// The i-th positive representative (entry 2i of the full list), generated
// independently of any other index.
RealVector sphere_point(int n, std::uint64_t seed, std::uint64_t pair_index);

}  // namespace widthlab
