#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "widthlab/exponent.hpp"

namespace widthlab {

using RealVector = std::vector<double>;

// lp quasi-norm (sum |x_i|^p)^{1/p}; max |x_i| for p = inf. Valid for all
// p > 0, including p < 1 where the triangle inequality fails.
inline double lp_norm(std::span<const double> x, const Exponent& p) {
  if (x.empty()) throw std::invalid_argument("lp_norm: empty vector");
  if (p.is_inf()) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    return m;
  }
  const double pv = p.value();
  if (pv == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::fabs(v);
    return s;
  }
  if (pv == 2.0) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (double v : x) {
      const double r = v / m;
      s += r * r;
    }
    return m * std::sqrt(s);
  }
  // scale by the max to keep pow well-conditioned for extreme p
  double m = 0.0;
  for (double v : x) m = std::max(m, std::fabs(v));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : x) {
    const double r = std::fabs(v) / m;
    if (r > 0.0) s += std::pow(r, pv);
  }
  return m * std::pow(s, 1.0 / pv);
}

inline double lp_norm(const RealVector& x, const Exponent& p) {
  return lp_norm(std::span<const double>(x.data(), x.size()), p);
}

// |x| sorted ascending: output_k is the k-th smallest magnitude.
inline RealVector nondecreasing_magnitude_rearrangement(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("rearrangement: empty vector");
  RealVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::fabs(x[i]);
  std::sort(out.begin(), out.end());
  return out;
}

inline RealVector nondecreasing_magnitude_rearrangement(const RealVector& x) {
  return nondecreasing_magnitude_rearrangement(std::span<const double>(x.data(), x.size()));
}

// k-th smallest magnitude (1-based), without materializing the full sort.
inline double kth_smallest_magnitude(std::span<const double> x, std::size_t k) {
  if (k == 0 || k > x.size()) throw std::invalid_argument("kth_smallest_magnitude: k out of range");
  std::vector<double> mags(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mags[i] = std::fabs(x[i]);
  std::nth_element(mags.begin(), mags.begin() + (k - 1), mags.end());
  return mags[k - 1];
}

// Piecewise-linear clamp t_eps: -1 below -eps, x/eps inside, +1 above eps.
// Odd and (1/eps)-Lipschitz.
inline double threshold(double x, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("threshold: eps must be positive");
  if (x <= -eps) return -1.0;
  if (x >= eps) return 1.0;
  return x / eps;
}

inline bool all_finite(std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace widthlab
