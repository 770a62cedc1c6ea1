#pragma once

#include <cstdint>
#include <vector>

#include "widthlab/certificate.hpp"
#include "widthlab/exponent.hpp"
#include "widthlab/smoothness.hpp"

namespace widthlab {

struct BesovExperimentOptions {
  std::size_t calib_samples = 10000;
  double eps_safety = 0.9;
  // number of sampled minor checks; C(m^d, n+1) is astronomically large here
  // and each sampled check is an O((n+1)^3) SVD, so this stays small
  std::size_t minor_budget = 32;
  int quad_nodes = 200;
  // the sup over shifts is resolved at the quadrature's own log-granularity
  ModulusOptions modulus{.ladder = ModulusOptions::Ladder::geometric};
};

struct BesovCertificateReport {
  int d = 0;
  double s = 0.0;
  int n = 0;
  int m = 0;               // subdivisions per axis, ceil((2n)^{1/d})
  std::size_t M = 0;       // m^d >= 2n
  int res = 0;
  std::size_t samples = 0; // antipodally closed sample count
  std::uint64_t seed = 0;
  double eps = 0.0;
  double min_lp_raw = 0.0;        // min_z || Psi(c(z)) ||_{L_p}
  double max_besov_norm = 0.0;    // B, the empirical normalizer
  double min_lp_normalized = 0.0; // min_z || Psi(c(z)) / B ||_{L_p}
  bool unresolved_small_scale = false;
};

// Theorem-2-style construction at one n: certificate map into the lq ball,
// composed with the disjoint-bump embedding, normalized into the empirical
// unit Besov ball by B = max_z besov_norm(Psi(c(z))).
BesovCertificateReport besov_ball_certificate(int d, double s, const Exponent& p, const Exponent& q,
                                              int n, int res, std::size_t samples, std::uint64_t seed,
                                              const BesovExperimentOptions& opts = {});

struct ExperimentRow {
  int n = 0;
  double min_lp = 0.0;                 // normalized minimum for this n
  double theory_floor_exponent = 0.0;  // -s/d
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

struct BesovExperimentResult {
  std::vector<ExperimentRow> rows;
  std::vector<BesovCertificateReport> reports;
  double slope = 0.0;              // log-log fit of min_lp against n
  double expected_exponent = 0.0;  // -s/d
};

BesovExperimentResult besov_experiment(int d, double s, const Exponent& p, const Exponent& q,
                                       const std::vector<int>& n_list, int res, std::size_t samples,
                                       std::uint64_t seed, const BesovExperimentOptions& opts = {});

// least-squares slope of y against x
double fit_slope(std::span<const double> x, std::span<const double> y);

}  // namespace widthlab
