#pragma once

#include <cstdint>

#include "widthlab/exponent.hpp"
#include "widthlab/vec.hpp"

namespace widthlab {

// Coordinate projection encoder/decoder pair: keep the first n coordinates,
// decode by zero-padding the last M - n.
struct ProjectionScheme {
  int M;
  int n;

  ProjectionScheme(int M_, int n_);
};

RealVector encode(const RealVector& x, const ProjectionScheme& scheme);
RealVector decode(const RealVector& y, const ProjectionScheme& scheme);

// lp norm of x - decode(encode(x)), i.e. of the tail (x_{n+1}, ..., x_M).
double reconstruction_error(const RealVector& x, const ProjectionScheme& scheme, const Exponent& p);

// Unit-lq-norm input attaining the Hoelder tail bound: zeros in the first n
// coordinates, constant magnitude (M-n)^{-1/q} in the tail (ones for q = inf).
RealVector extremal_input(int M, int n, const Exponent& q);

struct UpperBoundReport {
  double max_error;        // max reconstruction error over the sample set
  double extremal_error;   // error of the included extremal input
  double exact_width;      // (M - n)^{1/p - 1/q}
  std::size_t samples;     // random samples drawn (extremal input added on top)
  std::uint64_t seed;
  bool bound_respected;    // max_error <= exact_width + 1e-12
  bool attained;           // max_error >= exact_width - 1e-12
};

// Max reconstruction error over `samples` random unit-q-norm directions plus
// the extremal input. Worst cases lie on the boundary of the ball (the error
// to norm ratio is scale invariant), so directions are rescaled to norm 1.
UpperBoundReport empirical_upper_bound(int M, int n, const Exponent& p, const Exponent& q,
                                       std::size_t samples, std::uint64_t seed);

}  // namespace widthlab
