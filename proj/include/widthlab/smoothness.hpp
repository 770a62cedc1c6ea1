#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "widthlab/exponent.hpp"
#include "widthlab/grid_function.hpp"

namespace widthlab {

// Uniform box grid (a rectangular sub-domain of [0,1]^d): the domain of a
// finite difference, or a corner restriction used by the scaling check.
struct BoxGrid {
  int d = 1;
  std::vector<int> extent;     // points per axis
  double spacing = 0.0;        // physical grid spacing (shared across axes)
  std::vector<double> values;  // row-major over extent

  std::size_t size() const;
  bool empty() const;
  // rectangle rule with cell weight spacing^d; max for q = inf; 0 when empty
  double lq_norm(const Exponent& q) const;
};

BoxGrid as_box(const GridFunction& f);
// Restriction to the corner box [0, extent_a) per axis.
BoxGrid corner_box(const GridFunction& f, const std::vector<int>& extent);
// Stride-m corner subsampling: point j of the result is grid point m*j of f.
// This is the sub-cube [0,1/m]^d of f in rescaled coordinates.
BoxGrid corner_subsample(const GridFunction& f, int m);

struct DifferenceField {
  BoxGrid grid;              // Delta_h^k f on Omega_kh
  std::vector<int> origin;   // index offset of Omega_kh inside the source grid
  std::vector<int> steps;    // snapped shift, in grid steps per axis
  bool empty_domain = false; // |kh| too large; norms are 0 by convention

  double lq_norm(const Exponent& q) const { return empty_domain ? 0.0 : grid.lq_norm(q); }
};

// k-th order finite difference with physical shift h (snapped per axis to the
// nearest grid multiple), restricted to Omega_kh = {x : x + kh in [0,1]^d}.
DifferenceField finite_difference(const GridFunction& f, const std::vector<double>& h, int k);

struct ModulusOptions {
  // extra random directions for the sup over h when d >= 2 (axis directions
  // are always included)
  int directions = 64;
  std::uint64_t direction_seed = 2024;

  // Shift ladder for the sup over lattice magnitudes |h| <= t:
  //   full      - every lattice multiple (exact sup on the grid)
  //   geometric - every multiple up to ladder_head steps, then geometrically
  //               thinned by ladder_ratio; resolves the sup at the same
  //               granularity as a log-spaced quadrature in t
  enum class Ladder { full, geometric };
  Ladder ladder = Ladder::full;
  int ladder_head = 64;
  double ladder_ratio = 1.03;
};

// omega_k(f, t)_q: sup over grid-aligned |h| <= t of the L_q norm of the k-th
// difference on its shrunken domain. Full lattice enumeration in d = 1;
// ray-sampled directions for d >= 2.
double modulus_of_smoothness(const GridFunction& f, double t, int k, const Exponent& q,
                             const ModulusOptions& opts = {});

// omega_k at every node of an ascending t grid, sharing one sweep over
// shifts (identical to evaluating the modulus per node).
std::vector<double> modulus_profile(const BoxGrid& f, int k, const Exponent& q,
                                    std::span<const double> ts_ascending,
                                    const ModulusOptions& opts = {});

struct BesovParams {
  double s;    // smoothness > 0
  Exponent r;  // fine index
  Exponent q;  // integrability
  int k;       // modulus order, must satisfy k > s

  BesovParams(double s_, Exponent r_, Exponent q_, int k_);
  // smallest admissible order k = floor(s) + 1
  static BesovParams with_default_order(double s, Exponent r, Exponent q);
};

struct SeminormResult {
  double value = 0.0;
  // the first quadrature node carries > 10% of the integral: the grid cannot
  // resolve the small-scale behaviour of the integrand
  bool unresolved_small_scale = false;
  double first_node_fraction = 0.0;
};

// Besov seminorm: log-spaced quadrature of omega_k(f,t)^r t^{-sr-1} over
// [spacing, k*sqrt(d)] plus the closed-form constant tail; max of t^{-s}
// omega_k(f,t) over the node set when r = inf.
SeminormResult besov_seminorm(const GridFunction& f, const BesovParams& params,
                              const ModulusOptions& opts = {}, int quad_nodes = 200);

// ||f||_{L_q} + Besov seminorm.
double besov_norm(const GridFunction& f, const BesovParams& params, const ModulusOptions& opts = {});

// ||f||_{L_q} + L_q norm of the order-s tensor of central-difference
// derivatives, lq-combined across multi-indices.
double sobolev_norm(const GridFunction& f, int s, const Exponent& q);

}  // namespace widthlab
