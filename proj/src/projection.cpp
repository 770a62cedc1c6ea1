#include "widthlab/projection.hpp"

#include <cmath>
#include <stdexcept>

#include "widthlab/parallel.hpp"
#include "widthlab/rng.hpp"
#include "widthlab/widths.hpp"

namespace widthlab {

ProjectionScheme::ProjectionScheme(int M_, int n_) : M(M_), n(n_) {
  if (n < 1 || n >= M) throw std::invalid_argument("ProjectionScheme: need 1 <= n < M");
}

RealVector encode(const RealVector& x, const ProjectionScheme& scheme) {
  if (static_cast<int>(x.size()) != scheme.M) throw std::invalid_argument("encode: length(x) != M");
  return RealVector(x.begin(), x.begin() + scheme.n);
}

RealVector decode(const RealVector& y, const ProjectionScheme& scheme) {
  if (static_cast<int>(y.size()) != scheme.n) throw std::invalid_argument("decode: length(y) != n");
  RealVector out(static_cast<std::size_t>(scheme.M), 0.0);
  std::copy(y.begin(), y.end(), out.begin());
  return out;
}

double reconstruction_error(const RealVector& x, const ProjectionScheme& scheme, const Exponent& p) {
  if (static_cast<int>(x.size()) != scheme.M) {
    throw std::invalid_argument("reconstruction_error: length(x) != M");
  }
  return lp_norm(std::span<const double>(x.data() + scheme.n, x.size() - scheme.n), p);
}

RealVector extremal_input(int M, int n, const Exponent& q) {
  if (n < 1 || n >= M) throw std::invalid_argument("extremal_input: need 1 <= n < M");
  RealVector x(static_cast<std::size_t>(M), 0.0);
  const double tail = q.is_inf() ? 1.0 : std::pow(static_cast<double>(M - n), -q.reciprocal());
  for (int i = n; i < M; ++i) x[static_cast<std::size_t>(i)] = tail;
  return x;
}

UpperBoundReport empirical_upper_bound(int M, int n, const Exponent& p, const Exponent& q,
                                       std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("empirical_upper_bound: samples must be >= 1");
  if (p > q) throw std::invalid_argument("empirical_upper_bound: need p <= q");
  const ProjectionScheme scheme(M, n);
  const double exact = exact_manifold_width(M, n, p, q);

  std::vector<double> errors(samples);
  parallel_for(samples, [&](std::size_t i) {
    RealVector x = rng::gaussian_vector(seed, i, static_cast<std::size_t>(M));
    const double qn = lp_norm(x, q);
    if (qn == 0.0) {
      errors[i] = 0.0;
      return;
    }
    for (double& v : x) v /= qn;
    errors[i] = reconstruction_error(x, scheme, p);
  });

  double max_error = 0.0;
  for (double e : errors) max_error = std::max(max_error, e);
  const double extremal_error = reconstruction_error(extremal_input(M, n, q), scheme, p);
  max_error = std::max(max_error, extremal_error);

  UpperBoundReport report;
  report.max_error = max_error;
  report.extremal_error = extremal_error;
  report.exact_width = exact;
  report.samples = samples;
  report.seed = seed;
  report.bound_respected = max_error <= exact + 1e-12;
  report.attained = max_error >= exact - 1e-12;
  return report;
}

}  // namespace widthlab
