#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "doctest.h"

#include "widthlab/bump.hpp"
#include "widthlab/errors.hpp"
#include "widthlab/grid_function.hpp"
#include "widthlab/rng.hpp"
#include "widthlab/smoothness.hpp"

using namespace widthlab;

namespace {

const Exponent kInf = Exponent::infinity();

GridFunction line_1d(int res) {
  return GridFunction::sample(1, res, [](std::span<const double> x) { return x[0]; });
}

}  // namespace

TEST_CASE("grid function basics and norms") {
  const GridFunction f = GridFunction::sample(1, 101, [](std::span<const double>) { return 1.0; });
  CHECK(f.lq_norm(kInf) == 1.0);
  // rectangle rule with cell weight 1/(res-1) slightly overcounts the
  // endpoints: 101 cells of width 1/100
  CHECK(f.lq_norm(Exponent(1)) == doctest::Approx(1.01).epsilon(1e-12));

  CHECK_THROWS_AS(GridFunction(1, 3, std::vector<double>(3, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(GridFunction(1, 8, std::vector<double>(5, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(GridFunction(1, 8, std::vector<double>(8, std::nan(""))), std::invalid_argument);
}

TEST_CASE("finite difference identities") {
  const int res = 4097;
  const GridFunction f = line_1d(res);

  // k = 1 on f(x) = x: constant h over the shrunken domain [0, 1 - h]
  const DifferenceField d1 = finite_difference(f, {0.25}, 1);
  CHECK_FALSE(d1.empty_domain);
  const double h_snapped = d1.steps[0] * f.spacing();
  CHECK(h_snapped == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(d1.grid.extent[0] == res - d1.steps[0]);
  for (double v : d1.grid.values) CHECK(v == doctest::Approx(h_snapped).epsilon(1e-12));

  // k = 2 kills affine functions exactly
  const GridFunction affine =
      GridFunction::sample(1, res, [](std::span<const double> x) { return 3.0 * x[0] - 1.0; });
  const DifferenceField d2 = finite_difference(affine, {0.1}, 2);
  for (double v : d2.grid.values) CHECK(std::fabs(v) <= 1e-12);

  // k = 2 on x^2 gives exactly 2 h^2
  const GridFunction sq = GridFunction::sample(1, res, [](std::span<const double> x) { return x[0] * x[0]; });
  const DifferenceField d3 = finite_difference(sq, {0.1}, 2);
  const double h3 = d3.steps[0] * f.spacing();
  for (double v : d3.grid.values) CHECK(v == doctest::Approx(2.0 * h3 * h3).epsilon(1e-9));

  // |kh| too large: empty domain, norm 0 by convention
  const DifferenceField empty = finite_difference(f, {0.7}, 2);
  CHECK(empty.empty_domain);
  CHECK(empty.lq_norm(Exponent(2)) == 0.0);

  // negative shifts mirror positive ones
  const DifferenceField neg = finite_difference(sq, {-0.1}, 2);
  CHECK(neg.steps[0] == -d3.steps[0]);
  CHECK(neg.origin[0] == 2 * d3.steps[0]);
  CHECK(neg.lq_norm(Exponent(2)) == doctest::Approx(d3.lq_norm(Exponent(2))).epsilon(1e-12));

  CHECK_THROWS_AS(finite_difference(f, {0.1, 0.1}, 1), std::invalid_argument);
  CHECK_THROWS_AS(finite_difference(f, {0.1}, 0), std::invalid_argument);
}

TEST_CASE("modulus of smoothness in 1d") {
  const int res = 4097;
  const GridFunction f = line_1d(res);

  // constant: zero modulus at any order
  const GridFunction c = GridFunction::sample(1, res, [](std::span<const double>) { return 2.5; });
  CHECK(modulus_of_smoothness(c, 0.3, 1, kInf) == 0.0);
  CHECK(modulus_of_smoothness(c, 0.3, 2, Exponent(2)) == 0.0);

  // f(x) = x: omega_1(t)_inf = largest grid-aligned shift below t
  for (double t : {0.1, 0.2, 0.3}) {
    CHECK(std::fabs(modulus_of_smoothness(f, t, 1, kInf) - t) <= f.spacing() * (1.0 + 1e-9));
  }

  // nondecreasing in t on a random smooth function
  const GridFunction g = GridFunction::sample(1, 513, [](std::span<const double> x) {
    return std::sin(7.0 * x[0]) + 0.3 * std::cos(19.0 * x[0]);
  });
  double prev = 0.0;
  for (double t : {0.01, 0.03, 0.1, 0.3, 1.0}) {
    const double w = modulus_of_smoothness(g, t, 2, Exponent(2));
    CHECK(w >= prev - 1e-15);
    prev = w;
  }
}

TEST_CASE("modulus profile matches per-node evaluation") {
  const GridFunction g = GridFunction::sample(1, 257, [](std::span<const double> x) {
    return std::exp(-3.0 * x[0]) * std::sin(9.0 * x[0]);
  });
  const std::vector<double> ts = {0.01, 0.05, 0.2, 0.5, 1.0};
  const std::vector<double> prof = modulus_profile(as_box(g), 2, Exponent(2), ts);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CHECK(prof[i] == modulus_of_smoothness(g, ts[i], 2, Exponent(2)));
  }
}

TEST_CASE("modulus in 2d picks up diagonal shifts") {
  const GridFunction g =
      GridFunction::sample(2, 65, [](std::span<const double> x) { return x[0] + x[1]; });
  // sup over |h| <= t of |h_1 + h_2| = t sqrt(2), up to direction sampling
  const double w = modulus_of_smoothness(g, 0.3, 1, kInf);
  CHECK(w <= 0.3 * std::sqrt(2.0) * 1.001);
  CHECK(w >= 0.3 * std::sqrt(2.0) * 0.93);
}

TEST_CASE("besov seminorm basics") {
  const BesovParams params = BesovParams::with_default_order(1.0, Exponent(1), Exponent(2));
  CHECK(params.k == 2);
  CHECK_THROWS_AS(BesovParams(1.0, Exponent(1), Exponent(2), 1), std::invalid_argument);

  const GridFunction c = GridFunction::sample(1, 512, [](std::span<const double>) { return 3.0; });
  CHECK(besov_seminorm(c, params).value == 0.0);
  CHECK(besov_norm(c, params) == doctest::Approx(3.0 * std::pow(512.0 / 511.0, 0.5)).epsilon(1e-12));

  const GridFunction zero = GridFunction::sample(1, 512, [](std::span<const double>) { return 0.0; });
  CHECK(besov_norm(zero, params) == 0.0);
}

TEST_CASE("besov seminorm self-convergence on the bump") {
  const BesovParams params = BesovParams::with_default_order(1.0, Exponent(1), Exponent(2));
  const double coarse = besov_seminorm(bump_function(1, 1024), params).value;
  const double fine = besov_seminorm(bump_function(1, 2048), params).value;
  CHECK(fine == doctest::Approx(coarse).epsilon(0.05));

  const double norm_coarse = besov_norm(bump_function(1, 1024), params);
  const double norm_fine = besov_norm(bump_function(1, 2048), params);
  CHECK(norm_fine > 0.0);
  CHECK(norm_fine == doctest::Approx(norm_coarse).epsilon(0.05));
}

TEST_CASE("besov seminorm scaling in m") {
  // |psi(m.)|_B ~ m^{s - d/q} |psi|_B via the corner sub-cube reading
  const int res = 4096;
  const GridFunction psi = bump_function(1, res);
  const double s = 1.0;
  const Exponent q(2);
  const BesovParams params = BesovParams::with_default_order(s, Exponent(1), q);

  // seminorm of the subsampled corner box equals the seminorm integral of the
  // profile; compare against the scaling factor between m = 1 and m = 2
  const int m = 2;
  const std::vector<double> t_grid = [] {
    std::vector<double> ts;
    for (int i = 0; i <= 40; ++i) ts.push_back(std::exp(std::log(1e-3) + i * (std::log(2.0) - std::log(1e-3)) / 40));
    return ts;
  }();
  std::vector<double> scaled_ts(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) scaled_ts[i] = t_grid[i] / m;
  const std::vector<double> omega_sub = modulus_profile(corner_subsample(psi, m), params.k, q, scaled_ts);
  const std::vector<double> omega_full = modulus_profile(as_box(psi), params.k, q, t_grid);
  double lhs = 0.0, rhs = 0.0;  // integrate omega t^{-s-1} dt over the grid
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    const double du = std::log(t_grid[i + 1] / t_grid[i]);
    lhs += 0.5 * du * (omega_sub[i] * std::pow(scaled_ts[i], -s) + omega_sub[i + 1] * std::pow(scaled_ts[i + 1], -s));
    rhs += 0.5 * du * (omega_full[i] * std::pow(t_grid[i], -s) + omega_full[i + 1] * std::pow(t_grid[i + 1], -s));
  }
  const double expected = std::pow(static_cast<double>(m), s - q.reciprocal());
  CHECK(lhs / rhs == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("besov seminorm with r = inf") {
  // |f|_{B^s_inf} = sup_t t^{-s} omega_k(f, t): cross-check against a direct
  // max over the same node set
  const GridFunction psi = bump_function(1, 1024);
  const BesovParams params(1.0, Exponent::infinity(), Exponent(2), 2);
  const SeminormResult semi = besov_seminorm(psi, params);
  CHECK(semi.value > 0.0);
  double manual = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double t = std::exp(std::log(psi.spacing()) +
                              (std::log(2.0) - std::log(psi.spacing())) * i / 199.0);
    manual = std::max(manual, std::pow(t, -1.0) * modulus_of_smoothness(psi, t, 2, Exponent(2)));
  }
  CHECK(semi.value == doctest::Approx(manual).epsilon(1e-12));
}

TEST_CASE("unresolved small scale warning") {
  // rough noise saturates omega at the first node; with few quadrature nodes
  // the first node carries a large share of the integral
  rng::Stream s(12, 0);
  const GridFunction noise = GridFunction::sample(1, 256, [&](std::span<const double>) {
    return s.gaussian();
  });
  const BesovParams params = BesovParams::with_default_order(2.0, Exponent(1), Exponent(2));
  const SeminormResult coarse = besov_seminorm(noise, params, {}, 40);
  CHECK(coarse.unresolved_small_scale);
  CHECK(coarse.first_node_fraction > 0.10);
  // the default node count resolves the same integrand
  const SeminormResult fine = besov_seminorm(noise, params);
  CHECK_FALSE(fine.unresolved_small_scale);

  // a resolved smooth bump never warns
  const SeminormResult bump = besov_seminorm(bump_function(1, 1024),
                                             BesovParams::with_default_order(1.0, Exponent(1), Exponent(2)));
  CHECK_FALSE(bump.unresolved_small_scale);
}

TEST_CASE("besov norm homogeneity") {
  const BesovParams params = BesovParams::with_default_order(1.5, Exponent(2), Exponent(3));
  const GridFunction f = GridFunction::sample(1, 700, [](std::span<const double> x) {
    return std::sin(5.0 * x[0]) * std::exp(-x[0]);
  });
  const double base = besov_norm(f, params);
  for (double alpha : {-2.0, 0.25, 7.5}) {
    GridFunction g = f;
    for (double& v : g.mutable_values()) v *= alpha;
    CHECK(besov_norm(g, params) == doctest::Approx(std::fabs(alpha) * base).epsilon(1e-10));
  }
}

TEST_CASE("disjoint support difference subadditivity") {
  // ||Delta^k_h (f+g)||_q^q <= (k+1)^q (||Delta^k_h f||_q^q + ||Delta^k_h g||_q^q)
  const int res = 1024;
  rng::Stream s(4, 0);
  for (int k : {1, 2, 3}) {
    for (double qv : {1.0, 2.0}) {
      const Exponent q(qv);
      for (int rep = 0; rep < 20; ++rep) {
        const double amp_f = 0.5 + s.uniform01(), amp_g = 0.5 + s.uniform01();
        const GridFunction f = GridFunction::sample(1, res, [&](std::span<const double> x) {
          return x[0] < 0.5 ? amp_f * bump_profile(2.0 * x[0]) : 0.0;
        });
        const GridFunction g = GridFunction::sample(1, res, [&](std::span<const double> x) {
          return x[0] >= 0.5 ? amp_g * bump_profile(2.0 * x[0] - 1.0) : 0.0;
        });
        GridFunction sum = f;
        for (std::size_t i = 0; i < sum.size(); ++i) sum.mutable_values()[i] += g.values()[i];
        const double h = 0.02 + 0.3 * s.uniform01();
        const double lhs = std::pow(finite_difference(sum, {h}, k).lq_norm(q), qv);
        const double rf = std::pow(finite_difference(f, {h}, k).lq_norm(q), qv);
        const double rg = std::pow(finite_difference(g, {h}, k).lq_norm(q), qv);
        CHECK(lhs <= std::pow(k + 1.0, qv) * (rf + rg) * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("sobolev norm") {
  const int res = 4096;
  const GridFunction c = GridFunction::sample(1, res, [](std::span<const double>) { return 2.0; });
  CHECK(sobolev_norm(c, 1, kInf) == 2.0);

  const GridFunction f = line_1d(res);
  CHECK(sobolev_norm(f, 1, kInf) == doctest::Approx(2.0).epsilon(1e-12));

  const GridFunction sine = GridFunction::sample(1, res, [](std::span<const double> x) {
    return std::sin(2.0 * std::numbers::pi * x[0]);
  });
  const double expected = std::pow(2.0, -0.5) * (1.0 + 2.0 * std::numbers::pi);
  CHECK(sobolev_norm(sine, 1, Exponent(2)) == doctest::Approx(expected).epsilon(0.01));

  CHECK_THROWS_AS(sobolev_norm(f, 0, kInf), std::invalid_argument);
  const GridFunction tiny = GridFunction::sample(1, 5, [](std::span<const double> x) { return x[0]; });
  CHECK_THROWS_AS(sobolev_norm(tiny, 2, kInf), std::invalid_argument);

  // d = 2 mixed derivatives: f(x,y) = x y has f_xy = 1, f_xx = f_yy = 0
  const GridFunction xy =
      GridFunction::sample(2, 129, [](std::span<const double> x) { return x[0] * x[1]; });
  // |f^{(2)}|_inf = max over multi-indices = 1, ||f||_inf = 1
  CHECK(sobolev_norm(xy, 2, kInf) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("grid file round trip and errors") {
  const GridFunction f = GridFunction::sample(1, 64, [](std::span<const double> x) {
    return std::cos(3.0 * x[0]) / 3.0;
  });
  const std::string path = "gridfn_roundtrip.txt";
  f.save(path);
  const GridFunction g = GridFunction::load(path);
  CHECK(g.dim() == f.dim());
  CHECK(g.resolution() == f.resolution());
  CHECK(g.values() == f.values());
  std::remove(path.c_str());

  CHECK_THROWS_AS(GridFunction::load("does_not_exist.txt"), BadGridFileError);
  {
    std::ofstream bad("bad_grid.txt");
    bad << "dim=1\nres=4\n0\n0\n0\n0\n";
  }
  CHECK_THROWS_AS(GridFunction::load("bad_grid.txt"), BadGridFileError);
  {
    std::ofstream bad("bad_grid.txt");
    bad << "d=1\nres=4\n0\n0\n0\n";  // one value short
  }
  CHECK_THROWS_AS(GridFunction::load("bad_grid.txt"), BadGridFileError);
  {
    std::ofstream bad("bad_grid.txt");
    bad << "d=1\nres=4\n0\nnot_a_number\n0\n0\n";
  }
  CHECK_THROWS_AS(GridFunction::load("bad_grid.txt"), BadGridFileError);
  std::remove("bad_grid.txt");
}
