#pragma once

#include <span>
#include <vector>

#include "widthlab/grid_function.hpp"
#include "widthlab/smoothness.hpp"
#include "widthlab/vec.hpp"

namespace widthlab {

// 1-d profile exp(-1/(y(1-y))) on (0,1), 0 outside; the d-dim bump is the
// tensor product of this profile.
double bump_profile(double y);

// psi(x) = prod_i exp(-1/(x_i(1-x_i))) sampled on the res-grid; smooth,
// nonnegative, supported on the open cube. res >= 16.
GridFunction bump_function(int d, int res);

struct BumpSpec {
  int m = 1;  // subdivisions per axis
  int d = 1;
  std::size_t M() const;  // m^d
};

// Precomputed per-axis factor table for Psi(a) = sum_i a_i psi(m(x - x_i)):
// every grid point lies in exactly one sub-cube, so Psi(a) at point j is
// a[cube(j)] times a fixed template value.
class BumpBasis {
 public:
  BumpBasis(int d, int m, int res);  // needs >= 16 grid points per sub-cube axis

  int d() const { return d_; }
  int m() const { return m_; }
  int res() const { return res_; }
  std::size_t M() const;

  GridFunction embed(std::span<const double> a) const;
  // allocation-free variant for hot loops; out is resized to res^d
  void embed_into(std::span<const double> a, std::vector<double>& out) const;

 private:
  int d_;
  int m_;
  int res_;
  std::vector<int> axis_cube_;    // res entries: sub-cube index along one axis
  std::vector<double> axis_val_;  // res entries: profile factor along one axis
};

GridFunction bump_embedding(std::span<const double> a, const BumpSpec& spec, int res);

// Max over t in t_grid of the relative deviation between omega_k(psi_i, t/m)_q
// on the corner sub-cube and m^{-d/q} omega_k(psi, t)_q on the full cube.
// psi_i is the stride-m corner subsample of psi (the sub-cube in rescaled
// coordinates), so m = 1 gives deviation 0 exactly.
double scaling_identity_check(const GridFunction& psi, int m, int k, const Exponent& q,
                              std::span<const double> t_grid, const ModulusOptions& opts = {});

// default t grid for the scaling check: log-spaced in [0.1, 1.0]
std::vector<double> default_scaling_t_grid(int nodes = 12);

}  // namespace widthlab
