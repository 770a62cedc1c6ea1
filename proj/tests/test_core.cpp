#include <cmath>

#include "doctest.h"

#include "widthlab/exponent.hpp"
#include "widthlab/rng.hpp"
#include "widthlab/sphere.hpp"
#include "widthlab/vec.hpp"

using namespace widthlab;

namespace {

RealVector random_vector(rng::Stream& s, std::size_t len, double scale = 1.0) {
  RealVector x(len);
  for (double& v : x) v = scale * s.gaussian();
  return x;
}

}  // namespace

TEST_CASE("exponent basics") {
  CHECK(Exponent(2.0).reciprocal() == 0.5);
  CHECK(Exponent::infinity().reciprocal() == 0.0);
  CHECK(Exponent::infinity().is_inf());
  CHECK(Exponent::parse("inf").is_inf());
  CHECK(Exponent::parse("0.5").value() == 0.5);
  CHECK_THROWS_AS(Exponent(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Exponent(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(Exponent::parse("two"), std::invalid_argument);
  CHECK_THROWS_AS(Exponent::parse("1.5x"), std::invalid_argument);

  // reciprocal is monotone decreasing
  CHECK(Exponent(0.5) < Exponent(1.0));
  CHECK(Exponent(3.0) < Exponent::infinity());
  CHECK(Exponent(0.5).reciprocal() > Exponent(1.0).reciprocal());
  CHECK(Exponent(3.0).reciprocal() > Exponent::infinity().reciprocal());
  CHECK(Exponent::infinity() == Exponent::infinity());
}

TEST_CASE("lp_norm examples") {
  CHECK(lp_norm(RealVector{3, 4}, Exponent(2)) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(lp_norm(RealVector{1, -1, 2}, Exponent(1)) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(lp_norm(RealVector{1, 1, 1, 1}, Exponent::infinity()) == 1.0);
  CHECK(lp_norm(RealVector{0, 0, 0}, Exponent(0.5)) == 0.0);
  CHECK_THROWS_AS(lp_norm(RealVector{}, Exponent(1)), std::invalid_argument);
}

TEST_CASE("lp_norm homogeneity and monotonicity in p") {
  rng::Stream s(17, 0);
  const Exponent ps[] = {Exponent(0.5), Exponent(1), Exponent(2), Exponent(3), Exponent::infinity()};
  for (int rep = 0; rep < 200; ++rep) {
    const RealVector x = random_vector(s, 1 + s.below(20));
    const double alpha = 4.0 * (s.uniform01() - 0.5);
    for (const Exponent& p : ps) {
      const double nx = lp_norm(x, p);
      RealVector ax(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) ax[i] = alpha * x[i];
      CHECK(lp_norm(ax, p) == doctest::Approx(std::fabs(alpha) * nx).epsilon(1e-12));
    }
    for (std::size_t a = 0; a + 1 < std::size(ps); ++a) {
      CHECK(lp_norm(x, ps[a]) >= lp_norm(x, ps[a + 1]) * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("Hoelder tail bound on random vectors") {
  // ||x||_p <= len^{1/p-1/q} ||x||_q for p <= q
  rng::Stream s(99, 0);
  const Exponent ps[] = {Exponent(0.5), Exponent(1), Exponent(2), Exponent(3), Exponent::infinity()};
  for (int rep = 0; rep < 10000; ++rep) {
    const std::size_t len = 1 + s.below(12);
    const RealVector x = random_vector(s, len);
    for (std::size_t a = 0; a < std::size(ps); ++a) {
      for (std::size_t b = a; b < std::size(ps); ++b) {
        const double lhs = lp_norm(x, ps[a]);
        const double factor = std::pow(static_cast<double>(len), ps[a].reciprocal() - ps[b].reciprocal());
        const double rhs = factor * lp_norm(x, ps[b]);
        CHECK(lhs <= rhs * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("nondecreasing magnitude rearrangement") {
  CHECK(nondecreasing_magnitude_rearrangement(RealVector{3, -1, 2}) == RealVector{1, 2, 3});
  CHECK(nondecreasing_magnitude_rearrangement(RealVector{0, 0, 5}) == RealVector{0, 0, 5});
  CHECK(nondecreasing_magnitude_rearrangement(RealVector{-0.5, 0.25, -0.25}) == RealVector{0.25, 0.25, 0.5});

  // permutation invariance
  rng::Stream s(5, 0);
  RealVector x = random_vector(s, 9);
  RealVector y = x;
  for (std::size_t i = y.size(); i > 1; --i) std::swap(y[i - 1], y[s.below(i)]);
  CHECK(nondecreasing_magnitude_rearrangement(x) == nondecreasing_magnitude_rearrangement(y));

  CHECK(kth_smallest_magnitude(RealVector{3, -1, 2}, 1) == 1.0);
  CHECK(kth_smallest_magnitude(RealVector{3, -1, 2}, 3) == 3.0);
}

TEST_CASE("threshold map") {
  CHECK(threshold(0.5, 1.0) == 0.5);
  CHECK(threshold(2.0, 1.0) == 1.0);
  CHECK(threshold(-3.0, 1.0) == -1.0);
  CHECK(threshold(1.0, 1.0) == 1.0);
  CHECK_THROWS_AS(threshold(0.0, 0.0), std::invalid_argument);

  rng::Stream s(7, 0);
  for (int rep = 0; rep < 2000; ++rep) {
    const double eps = 0.1 + s.uniform01();
    const double x = 6.0 * (s.uniform01() - 0.5);
    const double y = 6.0 * (s.uniform01() - 0.5);
    CHECK(threshold(-x, eps) == -threshold(x, eps));  // odd, exactly
    CHECK(std::fabs(threshold(x, eps)) <= 1.0);
    // 1/eps-Lipschitz
    CHECK(std::fabs(threshold(x, eps) - threshold(y, eps)) <= std::fabs(x - y) / eps * (1.0 + 1e-12));
  }
}

TEST_CASE("sphere sampling contract") {
  auto samples = sample_sphere(1, 4, 7);
  REQUIRE(samples.size() == 4);
  for (const auto& z : samples) {
    REQUIRE(z.point.size() == 2);
    CHECK(lp_norm(z.point, Exponent(2)) == doctest::Approx(1.0).epsilon(1e-12));
  }
  // closed under negation, adjacent pairing
  for (std::size_t i = 0; i + 1 < samples.size(); i += 2) {
    for (std::size_t j = 0; j < samples[i].point.size(); ++j) {
      CHECK(samples[i].point[j] == -samples[i + 1].point[j]);
    }
  }

  // bitwise determinism
  auto a = sample_sphere(2, 1000, 0);
  auto b = sample_sphere(2, 1000, 0);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].point == b[i].point);

  // a different seed decorrelates
  auto c = sample_sphere(2, 1000, 1);
  CHECK(a[0].point != c[0].point);

  CHECK_THROWS_AS(sample_sphere(2, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(sample_sphere(2, 3, 0), std::invalid_argument);
}
