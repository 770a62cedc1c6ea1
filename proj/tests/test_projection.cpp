#include <cmath>

#include "doctest.h"

#include "widthlab/projection.hpp"
#include "widthlab/rng.hpp"
#include "widthlab/widths.hpp"

using namespace widthlab;

namespace {

const Exponent kInf = Exponent::infinity();

}  // namespace

TEST_CASE("encode/decode examples") {
  const ProjectionScheme s32(3, 2);
  CHECK(encode(RealVector{5, 6, 7}, s32) == RealVector{5, 6});
  CHECK(decode(RealVector{5, 6}, s32) == RealVector{5, 6, 0});

  const ProjectionScheme s21(2, 1);
  CHECK(encode(RealVector{1, 2}, s21) == RealVector{1});
  CHECK(decode(RealVector{1}, s21) == RealVector{1, 0});
  CHECK(encode(RealVector{0, 0}, s21) == RealVector{0});
  CHECK(decode(RealVector{0}, s21) == RealVector{0, 0});

  CHECK_THROWS_AS(encode(RealVector{1, 2}, s32), std::invalid_argument);
  CHECK_THROWS_AS(decode(RealVector{1, 2, 3}, s32), std::invalid_argument);
  CHECK_THROWS_AS(ProjectionScheme(3, 3), std::invalid_argument);
}

TEST_CASE("encode/decode are linear, composition zeroes the tail") {
  rng::Stream s(3, 0);
  const ProjectionScheme scheme(7, 3);
  for (int rep = 0; rep < 100; ++rep) {
    RealVector x(7), y(7);
    for (int i = 0; i < 7; ++i) {
      x[i] = s.gaussian();
      y[i] = s.gaussian();
    }
    const double a = s.gaussian(), b = s.gaussian();
    RealVector combo(7);
    for (int i = 0; i < 7; ++i) combo[i] = a * x[i] + b * y[i];
    const RealVector ex = encode(x, scheme), ey = encode(y, scheme), ec = encode(combo, scheme);
    for (int i = 0; i < 3; ++i) CHECK(ec[i] == a * ex[i] + b * ey[i]);

    const RealVector round = decode(encode(x, scheme), scheme);
    for (int i = 0; i < 3; ++i) CHECK(round[i] == x[i]);
    for (int i = 3; i < 7; ++i) CHECK(round[i] == 0.0);
  }
}

TEST_CASE("reconstruction error examples") {
  CHECK(reconstruction_error(RealVector{5, 6, 7}, ProjectionScheme(3, 2), Exponent(1)) == 7.0);
  CHECK(reconstruction_error(RealVector{1, 1, 1, 1}, ProjectionScheme(4, 2), Exponent(2)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(reconstruction_error(RealVector{3, 0, 0}, ProjectionScheme(3, 1), kInf) == 0.0);
}

TEST_CASE("extremal input attains the Hoelder bound") {
  const RealVector x = extremal_input(3, 1, Exponent(2));
  CHECK(x[0] == 0.0);
  CHECK(x[1] == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-14));
  CHECK(x[2] == x[1]);
  CHECK(lp_norm(x, Exponent(2)) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(reconstruction_error(x, ProjectionScheme(3, 1), Exponent(1)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));

  // brute-force oracle: no random unit-q-norm vector beats the extremal input
  rng::Stream s(11, 0);
  double brute_max = 0.0;
  for (int rep = 0; rep < 100000; ++rep) {
    RealVector v(3);
    for (double& c : v) c = s.gaussian();
    const double qn = lp_norm(v, Exponent(2));
    for (double& c : v) c /= qn;
    brute_max = std::max(brute_max, reconstruction_error(v, ProjectionScheme(3, 1), Exponent(1)));
  }
  const double extremal = reconstruction_error(x, ProjectionScheme(3, 1), Exponent(1));
  CHECK(brute_max <= extremal * (1.0 + 1e-12));
  CHECK(brute_max >= extremal * 0.98);  // the sampled max comes close

  const RealVector xi = extremal_input(2, 1, kInf);
  CHECK(xi == RealVector{0, 1});
  CHECK(reconstruction_error(xi, ProjectionScheme(2, 1), Exponent(1)) == 1.0);

  // unit q-norm and attainment across a parameter grid
  const Exponent ps[] = {Exponent(0.5), Exponent(1), Exponent(2), Exponent(3), kInf};
  for (int M : {2, 5, 10}) {
    for (int n = 1; n < M; n += 2) {
      for (std::size_t b = 0; b < std::size(ps); ++b) {
        const RealVector e = extremal_input(M, n, ps[b]);
        CHECK(lp_norm(e, ps[b]) == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t a = 0; a <= b; ++a) {
          const double err = reconstruction_error(e, ProjectionScheme(M, n), ps[a]);
          CHECK(err == doctest::Approx(exact_manifold_width(M, n, ps[a], ps[b])).epsilon(1e-12));
        }
      }
    }
  }

  CHECK_THROWS_AS(extremal_input(3, 3, Exponent(1)), std::invalid_argument);
}

TEST_CASE("empirical upper bound") {
  const auto r1 = empirical_upper_bound(10, 4, Exponent(1), Exponent(2), 10000, 1);
  CHECK(r1.exact_width == doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));
  CHECK(r1.bound_respected);
  CHECK(r1.attained);
  CHECK(r1.max_error == doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));

  const auto r2 = empirical_upper_bound(2, 1, Exponent(1), Exponent(1), 100, 0);
  CHECK(r2.max_error == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r2.bound_respected);

  const auto r3 = empirical_upper_bound(3, 2, Exponent(1), kInf, 100, 0);
  CHECK(r3.max_error == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r3.bound_respected);

  // determinism
  const auto a = empirical_upper_bound(6, 2, Exponent(0.5), Exponent(3), 5000, 42);
  const auto b = empirical_upper_bound(6, 2, Exponent(0.5), Exponent(3), 5000, 42);
  CHECK(a.max_error == b.max_error);

  CHECK_THROWS_AS(empirical_upper_bound(4, 2, Exponent(2), Exponent(1), 10, 0), std::invalid_argument);
  CHECK_THROWS_AS(empirical_upper_bound(4, 2, Exponent(1), Exponent(2), 0, 0), std::invalid_argument);
}

TEST_CASE("results are independent of the worker count") {
  setenv("WIDTHLAB_THREADS", "3", 1);
  const auto threaded = empirical_upper_bound(8, 3, Exponent(1), Exponent(2), 4000, 5);
  setenv("WIDTHLAB_THREADS", "1", 1);
  const auto serial = empirical_upper_bound(8, 3, Exponent(1), Exponent(2), 4000, 5);
  unsetenv("WIDTHLAB_THREADS");
  CHECK(threaded.max_error == serial.max_error);
  CHECK(threaded.extremal_error == serial.extremal_error);
}

TEST_CASE("upper bound soundness across a grid") {
  // no random boundary point of the lq ball ever exceeds the closed form
  rng::Stream s(23, 0);
  const Exponent ps[] = {Exponent(0.5), Exponent(1), Exponent(2), Exponent(3), kInf};
  const int M = 9, n = 4;
  for (std::size_t b = 0; b < std::size(ps); ++b) {
    for (std::size_t a = 0; a <= b; ++a) {
      const double bound = exact_manifold_width(M, n, ps[a], ps[b]);
      for (int rep = 0; rep < 20000; ++rep) {
        RealVector v(M);
        for (double& c : v) c = s.gaussian();
        const double qn = lp_norm(v, ps[b]);
        for (double& c : v) c /= qn;
        CHECK(reconstruction_error(v, ProjectionScheme(M, n), ps[a]) <= bound + 1e-12);
      }
    }
  }
}
