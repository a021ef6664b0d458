#include "lpsphere/errors.hpp"
#include "lpsphere/radial.hpp"
#include "lpsphere/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace lpsphere;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("the Gaussian e^{-pi r^2} is its own transform") {
  for (int n = 1; n <= 8; ++n) {
    const auto f = gaussian(n);
    for (double t : {0.0, 0.4, 1.1, 2.0}) {
      const auto r = radial_ft(f, t);
      CHECK(std::abs(r.value - std::exp(-kPi * t * t)) < 1e-9);
      CHECK(r.est_error >= 0.0);
      CHECK_FALSE(r.extrapolated);
    }
  }
}

TEST_CASE("scaled Gaussian transform") {
  const auto f = gaussian(5, 2.5);
  for (double t : {0.0, 0.7, 1.5}) {
    CHECK(radial_ft(f, t).value == doctest::Approx((*f.exact_transform())(t)).epsilon(1e-9));
  }
}

TEST_CASE("ball indicator transform matches the closed form") {
  for (int n : {1, 2, 3, 6}) {
    const auto f = ball_indicator(n, 0.8);
    for (double t : {0.0, 0.3, 1.7}) {
      CHECK(std::abs(radial_ft(f, t).value - ball_ft(n, 0.8, t)) < 1e-10);
    }
  }
}

TEST_CASE("autocorrelation function") {
  SUBCASE("value at zero is the squared volume") {
    const auto f = autocorr_fn(3, 2.0);
    CHECK(f(0.0) == doctest::Approx(std::pow(4.0 * kPi / 3.0, 2)).epsilon(1e-14));
    CHECK(f(0.0) == doctest::Approx(17.5460).epsilon(1e-5));
  }
  SUBCASE("transform at zero is the volume of the half-radius ball") {
    for (int n = 1; n <= 8; ++n) {
      for (double r : {1.0, 2.0}) {
        const auto res = radial_ft(autocorr_fn(n, r), 0.0);
        const double vol = std::pow(kPi, 0.5 * n) * std::pow(0.5 * r, n) / std::tgamma(0.5 * n + 1.0);
        CHECK(std::abs(res.value - vol) < 1e-6 * vol);
      }
    }
  }
  SUBCASE("transform matches the lens volume and vanishes beyond the band limit") {
    for (int n : {2, 3, 5, 8}) {
      const auto f = autocorr_fn(n, 1.0);
      const double at0 = radial_ft(f, 0.0).value;
      for (double t : {0.25, 0.6, 0.9}) {
        CHECK(std::abs(radial_ft(f, t).value - ball_intersection_volume(n, 0.5, t)) < 1e-8);
      }
      for (double t = 1.05; t <= 2.0; t += 0.19) CHECK(std::abs(radial_ft(f, t).value) < 1e-6 * at0);
    }
  }
  SUBCASE("lens volume endpoints") {
    CHECK(ball_intersection_volume(1, 1.0, 0.5) == doctest::Approx(1.5));
    CHECK(ball_intersection_volume(3, 1.0, 0.0) == doctest::Approx(4 * kPi / 3).epsilon(1e-13));
    // Two unit balls in R^3 at distance d overlap in π(4 + d)(2 - d)²/12.
    CHECK(ball_intersection_volume(3, 1.0, 0.8) == doctest::Approx(kPi * 4.8 * 1.44 / 12).epsilon(1e-13));
    CHECK(ball_intersection_volume(4, 0.5, 1.0) == 0.0);
  }
}

TEST_CASE("Fourier inversion round trip") {
  // Transforming the closed-form transform returns the original function.
  for (int n : {2, 3, 4}) {
    const auto g = gaussian(n, 0.7);
    const RadialFunction gh(n, *g.exact_transform(), fit_decay(*g.exact_transform(), n, 30.0, 200.0));
    for (double r : {0.0, 0.5, 1.2}) CHECK(std::abs(radial_ft(gh, r).value - g(r)) < 1e-6);
  }
  for (int n : {3, 5}) {
    const auto a = autocorr_fn(n, 1.0);
    // The lens volume is compactly supported in B_1.
    const RadialFunction ah =
        RadialFunction(n, *a.exact_transform(), Decay{1.0, 1.0, false}).with_support(1.0);
    for (double r : {0.0, 0.7, 1.9}) CHECK(std::abs(radial_ft(ah, r).value - a(r)) < 1e-6 * a(0.0));
  }
}

TEST_CASE("the optimal Bessel function") {
  SUBCASE("n = 1 against the elementary formula at r = 1/2") {
    // J_{1/2}(π/2)² / ((3/4)(1/2)) with J_{1/2}(x) = √(2/(πx)) sin x.
    const double expect = (2.0 / (kPi * kPi / 2.0)) / (0.75 * 0.5);
    CHECK(levensh_fn(1)(0.5) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(levensh_root(1) == doctest::Approx(kPi).epsilon(1e-15));
  }
  SUBCASE("value at the origin") {
    for (int n = 1; n <= 8; ++n) {
      const double j = levensh_root(n);
      const double g = std::tgamma(0.5 * n + 1.0);
      CHECK(levensh_fn(n)(0.0) == doctest::Approx(std::pow(j / 2.0, n) / (g * g)).epsilon(1e-13));
    }
  }
  SUBCASE("vanishes at the contact radius and at later zeros") {
    for (int n = 1; n <= 8; ++n) {
      const auto f = levensh_fn(n);
      const double j = levensh_root(n);
      CHECK(f(1.0) == 0.0);
      for (int m = 2; m <= 5; ++m) CHECK(std::abs(f(bessel_root(Order::half_of(n), m) / j)) < 1e-14);
    }
  }
  SUBCASE("Taylor branch joins the direct formula near r = 1") {
    for (int n = 1; n <= 8; ++n) {
      const auto f = levensh_fn(n);
      for (double d : {-0.999e-5, 0.999e-5}) {
        const double inside = f(1.0 + d);
        const double outside = f(1.0 + d * 1.002 / 0.999);
        CHECK(inside == doctest::Approx(outside * d * 0.999 / (d * 1.002)).epsilon(1e-3));
      }
    }
  }
  SUBCASE("non-positive outside the unit ball") {
    for (int n = 1; n <= 8; ++n) {
      const auto f = levensh_fn(n);
      for (int i = 1; i <= 200; ++i) CHECK(f(1.0 + 9.0 * i / 200.0) <= 1e-12);
    }
    CHECK(levensh_fn(3)(1.5) <= 0.0);
  }
  SUBCASE("band limit") {
    for (int n : {1, 4, 8}) {
      const auto f = levensh_fn(n);
      CHECK(*f.band_limit() == doctest::Approx(levensh_root(n) / kPi));
      CHECK(f.decay().heuristic);
    }
  }
}

TEST_CASE("radial function preconditions") {
  CHECK_THROWS_AS(gaussian(0), DomainError);
  CHECK_THROWS_AS(autocorr_fn(3, -1.0), DomainError);
  CHECK_THROWS_AS(radial_ft(gaussian(2), -0.1), DomainError);
  CHECK_THROWS_AS(RadialFunction(2, nullptr, Decay{}), PreconditionError);
}
