#include "widthlab/bump.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace widthlab {

double bump_profile(double y) {
  if (y <= 0.0 || y >= 1.0) return 0.0;
  return std::exp(-1.0 / (y * (1.0 - y)));
}

GridFunction bump_function(int d, int res) {
  if (res < 16) throw std::invalid_argument("bump_function: res must be >= 16");
  return GridFunction::sample(d, res, [](std::span<const double> x) {
    double v = 1.0;
    for (double xi : x) v *= bump_profile(xi);
    return v;
  });
}

std::size_t BumpSpec::M() const {
  std::size_t out = 1;
  for (int i = 0; i < d; ++i) out *= static_cast<std::size_t>(m);
  return out;
}

BumpBasis::BumpBasis(int d, int m, int res) : d_(d), m_(m), res_(res) {
  if (d < 1 || d > 8) throw std::invalid_argument("BumpBasis: d must be in [1, 8]");
  if (m < 1) throw std::invalid_argument("BumpBasis: m must be >= 1");
  if (res < 4) throw std::invalid_argument("BumpBasis: res must be >= 4");
  if ((res - 1) / m + 1 < 16) {
    throw std::invalid_argument("BumpBasis: fewer than 16 grid points per sub-cube axis");
  }
  axis_cube_.resize(static_cast<std::size_t>(res));
  axis_val_.resize(static_cast<std::size_t>(res));
  const double sp = 1.0 / (res - 1);
  for (int j = 0; j < res; ++j) {
    const double x = j * sp;
    int cube = std::min(static_cast<int>(x * m), m - 1);
    // points on an internal face belong to the lower cube; the profile
    // vanishes there either way, keeping the supports disjoint
    axis_cube_[static_cast<std::size_t>(j)] = cube;
    axis_val_[static_cast<std::size_t>(j)] = bump_profile(x * m - cube);
  }
}

std::size_t BumpBasis::M() const {
  std::size_t out = 1;
  for (int i = 0; i < d_; ++i) out *= static_cast<std::size_t>(m_);
  return out;
}

void BumpBasis::embed_into(std::span<const double> a, std::vector<double>& out) const {
  if (a.size() != M()) throw std::invalid_argument("BumpBasis: coefficient count must be m^d");
  std::size_t total = 1;
  for (int i = 0; i < d_; ++i) total *= static_cast<std::size_t>(res_);
  out.resize(total);

  if (d_ == 1) {
    for (int j = 0; j < res_; ++j) {
      out[static_cast<std::size_t>(j)] =
          a[static_cast<std::size_t>(axis_cube_[static_cast<std::size_t>(j)])] * axis_val_[static_cast<std::size_t>(j)];
    }
    return;
  }

  std::vector<int> idx(static_cast<std::size_t>(d_), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    double val = 1.0;
    std::size_t cube = 0;
    for (int axis = 0; axis < d_; ++axis) {
      const int j = idx[static_cast<std::size_t>(axis)];
      cube = cube * static_cast<std::size_t>(m_) + static_cast<std::size_t>(axis_cube_[static_cast<std::size_t>(j)]);
      val *= axis_val_[static_cast<std::size_t>(j)];
    }
    out[flat] = a[cube] * val;
    for (int axis = d_ - 1; axis >= 0; --axis) {
      if (++idx[static_cast<std::size_t>(axis)] < res_) break;
      idx[static_cast<std::size_t>(axis)] = 0;
    }
  }
}

GridFunction BumpBasis::embed(std::span<const double> a) const {
  std::vector<double> out;
  embed_into(a, out);
  return GridFunction(d_, res_, std::move(out));
}

GridFunction bump_embedding(std::span<const double> a, const BumpSpec& spec, int res) {
  return BumpBasis(spec.d, spec.m, res).embed(a);
}

std::vector<double> default_scaling_t_grid(int nodes) {
  if (nodes < 2) throw std::invalid_argument("default_scaling_t_grid: need >= 2 nodes");
  std::vector<double> ts(static_cast<std::size_t>(nodes));
  const double lo = std::log(0.1), hi = std::log(1.0);
  for (int i = 0; i < nodes; ++i) {
    ts[static_cast<std::size_t>(i)] = std::exp(lo + (hi - lo) * i / (nodes - 1));
  }
  return ts;
}

double scaling_identity_check(const GridFunction& psi, int m, int k, const Exponent& q,
                              std::span<const double> t_grid, const ModulusOptions& opts) {
  if (m < 1) throw std::invalid_argument("scaling_identity_check: m must be >= 1");
  if (t_grid.empty()) throw std::invalid_argument("scaling_identity_check: empty t grid");
  std::vector<double> ts(t_grid.begin(), t_grid.end());
  std::sort(ts.begin(), ts.end());
  if (!(ts.front() > 0.0)) throw std::invalid_argument("scaling_identity_check: t values must be positive");

  const BoxGrid sub = corner_subsample(psi, m);
  for (int e : sub.extent) {
    if (e <= k + 1) throw std::invalid_argument("scaling_identity_check: sub-cube not resolved at this m");
  }
  std::vector<double> ts_scaled(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) ts_scaled[i] = ts[i] / m;

  const std::vector<double> lhs = modulus_profile(sub, k, q, ts_scaled, opts);
  const std::vector<double> rhs = modulus_profile(as_box(psi), k, q, ts, opts);
  const double factor = std::pow(static_cast<double>(m), -psi.dim() * q.reciprocal());

  double worst = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double expect = factor * rhs[i];
    if (expect == 0.0) {
      if (lhs[i] != 0.0) worst = std::max(worst, 1.0);
      continue;
    }
    worst = std::max(worst, std::fabs(lhs[i] - expect) / expect);
  }
  return worst;
}

}  // namespace widthlab
