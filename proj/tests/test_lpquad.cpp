#include "lpsphere/errors.hpp"
#include "lpsphere/lpquad.hpp"
#include "lpsphere/radial.hpp"
#include "lpsphere/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace lpsphere;

namespace {

constexpr double kPi = std::numbers::pi;

// (1 - |x|)⁺ on R: transform (sin πt / πt)², center-density bound exactly 1/2.
RadialFunction triangle() {
  auto profile = [](double x) { return x < 1.0 ? 1.0 - x : 0.0; };
  auto transform = [](double t) {
    if (t == 0.0) return 1.0;
    const double s = std::sin(kPi * t) / (kPi * t);
    return s * s;
  };
  return RadialFunction(1, profile, Decay{1.0, 1.0, false, 0.0}, std::nullopt, "triangle")
      .with_support(1.0)
      .with_transform(transform, Decay{1.0, 1.0, false, 0.0});
}

}  // namespace

TEST_CASE("quadrature rules") {
  for (int n = 2; n <= 8; ++n) {
    const auto rule = bgf_rule(n, 1.3, 200);
    CHECK(rule.w0 > 0.0);
    for (int m = 0; m < 200; ++m) CHECK(rule.weights[m] > 0.0);
    for (int m = 1; m < 200; ++m) CHECK(rule.nodes[m] > rule.nodes[m - 1]);
    CHECK(bgf_rule(n, 2.6, 10).w0 == doctest::Approx(rule.w0 / std::pow(2.0, n)).epsilon(1e-14));
    const auto serial = bgf_rule_serial(n, 1.3, 200);
    CHECK(serial.weights == rule.weights);
    CHECK(serial.nodes == rule.nodes);
  }
  SUBCASE("n = 1 is the trapezoid rule on the grid Z/r") {
    const auto rule = bgf_rule(1, 2.0, 50);
    CHECK(rule.w0 == doctest::Approx(0.5).epsilon(1e-14));
    for (int m = 0; m < 50; ++m) {
      CHECK(rule.nodes[m] == doctest::Approx((m + 1) / 2.0).epsilon(1e-13));
      CHECK(rule.weights[m] == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("weights approach the J² ≈ 2/(πλ) asymptotics") {
    // w_m J_{n/2-1}(λ_m)² / λ_m^{n-2} is constant; with J² ≈ 2/(πλ) the weight tends to
    // 2 λ^{n-1} / (Γ(n/2) π^{n/2-1} r^n).
    const int n = 5;
    const double r = 1.0;
    const auto rule = bgf_rule(n, r, 400);
    double prev = 0.0;
    for (int m : {50, 100, 200, 399}) {
      const double lambda = rule.nodes[m] * kPi * r;
      const double asym = 2.0 * std::pow(lambda, n - 1.0) / (std::tgamma(0.5 * n) * std::pow(kPi, 0.5 * n - 1.0));
      const double ratio = rule.weights[m] / asym;
      CHECK(std::abs(ratio - 1.0) < 1e-3);
      if (prev != 0.0) CHECK(std::abs(ratio - 1.0) <= std::abs(prev - 1.0) + 1e-12);
      prev = ratio;
    }
  }
  CHECK_THROWS_AS(bgf_rule(0, 1.0, 3), PreconditionError);
  CHECK_THROWS_AS(bgf_rule(2, 0.0, 3), PreconditionError);
}

TEST_CASE("quadrature identity for band-limited functions") {
  for (int n = 2; n <= 8; ++n) {
    for (double r : {1.0, 2.0}) {
      const auto q = bgf_apply(bgf_rule(n, r, 400), autocorr_fn(n, r));
      const double vol = ball_volume(n, 0.5 * r);
      CHECK(std::abs(q.value - vol) / vol < 1e-8);
    }
  }
  SUBCASE("Bessel function: every node is a zero") {
    for (int n = 1; n <= 8; ++n) {
      const auto f = levensh_fn(n);
      const auto rule = bgf_rule(n, levensh_root(n) / kPi, 100);
      for (int m = 0; m < 100; ++m) CHECK(std::abs(f(rule.nodes[m])) < 1e-12 * f(0.0));
      const double fhat0 = radial_ft(f, 0.0).value;
      CHECK(std::abs(rule.w0 * f(0.0) - fhat0) / fhat0 < 1e-8);
      CHECK(bgf_apply(rule, f).value == doctest::Approx(fhat0).epsilon(1e-8));
    }
  }
  SUBCASE("support strictly inside the rule radius") {
    for (int n : {2, 3, 5}) {
      const double r = 2.0;
      const auto f = autocorr_squared_fn(n, r / 2.0);
      const double fhat0 = radial_ft(f, 0.0).value;
      CHECK(bgf_apply(bgf_rule(n, r, 400), f).value == doctest::Approx(fhat0).epsilon(1e-8));

      // Slowly decaying samples: the error stays within the reported tail.
      const auto g = autocorr_fn(n, r / 2.0);
      const double vol = ball_volume(n, r / 4.0);
      const auto loose = bgf_apply(bgf_rule(n, r, 400), g, {1.0});
      CHECK(std::abs(loose.value - vol) <= loose.observed_tail);
      CHECK(std::abs(loose.value - vol) <= loose.envelope_tail);
      const auto coarse = bgf_apply(bgf_rule(n, r, 100), g, {1.0});
      CHECK(std::abs(loose.value - vol) <= std::abs(coarse.value - vol));
      CHECK_THROWS_AS(bgf_apply(bgf_rule(n, r, 400), g), AccuracyError);
    }
  }
  CHECK_THROWS_AS(bgf_apply(bgf_rule(3, 1.0, 10), autocorr_fn(3, 2.0)), PreconditionError);
  CHECK_THROWS_AS(bgf_apply(bgf_rule(3, 1.0, 10), gaussian(3)), PreconditionError);
  CHECK_THROWS_AS(bgf_apply(bgf_rule(3, 1.0, 10), autocorr_fn(2, 1.0)), PreconditionError);
}

TEST_CASE("node count selection") {
  const auto f = levensh_fn(4);
  const int M = choose_nodes(f, levensh_root(4) / kPi, 1e-6);
  const auto q = bgf_apply(bgf_rule(4, levensh_root(4) / kPi, M), f);
  CHECK(q.envelope_tail < 1e-6);
  CHECK_THROWS_AS(choose_nodes(autocorr_fn(3, 1.0), 1.0, 1e-10, 1024), ResourceError);
}

TEST_CASE("Dini series interpolation") {
  SUBCASE("rapidly decaying samples") {
    for (int n : {1, 2, 3, 5, 8}) {
      const double r = 1.5;
      const auto f = autocorr_squared_fn(n, r);
      const auto s = dini_samples(f, r, 400);
      const double fhat0 = radial_ft(f, 0.0).value;
      CHECK(dini_interpolate(n, r, s, 0.0).value == doctest::Approx(fhat0).epsilon(1e-6));
      const auto q = bgf_apply(bgf_rule(n, r, 400), f);
      CHECK(dini_interpolate(n, r, s, 0.0).value == doctest::Approx(q.value).epsilon(1e-6));
      for (double u : {0.3, 0.7}) {
        const double expected = radial_ft(f, r * u).value;
        CHECK(std::abs(dini_interpolate(n, r, s, u).value - expected) < 1e-6 * fhat0);
      }
    }
  }
  SUBCASE("ball autocorrelation") {
    for (int n : {2, 3, 4}) {
      const double r = 2.0;
      const auto f = autocorr_fn(n, r);
      const double vol = ball_volume(n, 0.5 * r);
      const auto s = dini_samples(f, r, 400);
      const auto at0 = dini_interpolate(n, r, s, 0.0, 1.0);
      CHECK(std::abs(at0.value - vol) <= at0.tail_estimate);
      const auto coarse = dini_interpolate(n, r, dini_samples(f, r, 100), 0.0, 1.0);
      CHECK(std::abs(at0.value - vol) < std::abs(coarse.value - vol));
      const double half = ball_intersection_volume(n, 0.5 * r, 0.5 * r);
      CHECK(dini_interpolate(n, r, s, 0.5, 1.0).value == doctest::Approx(half).epsilon(1e-4));
      CHECK(std::abs(dini_interpolate(n, r, s, 0.999, 1.0).value) < 1e-4 * vol);
      CHECK_THROWS_AS(dini_interpolate(n, r, s, 0.0), AccuracyError);
    }
  }
  CHECK_THROWS_AS(dini_interpolate(2, 1.0, {1.0, 0.0}, 1.0), PreconditionError);
  CHECK_THROWS_AS(dini_interpolate(2, 1.0, {1.0}, 0.5), PreconditionError);
}

TEST_CASE("closed-form bound") {
  CHECK(bessel_bound(1).density_bound == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(bessel_bound(1).center_density_bound == doctest::Approx(0.5).epsilon(1e-13));
  const double j1 = 3.8317059702075123;
  CHECK(bessel_bound(2).density_bound == doctest::Approx(j1 * j1 / 16.0).epsilon(1e-13));
  CHECK(bessel_bound(2).density_bound > kPi / std::sqrt(12.0));
  CHECK(bessel_bound(8).density_bound == doctest::Approx(0.29130).epsilon(1e-4));
  CHECK(bessel_bound(8).density_bound > std::pow(kPi, 4) / 384.0);
  for (int n = 1; n <= 36; ++n) {
    const auto b = bessel_bound(n);
    CHECK(b.center_density_bound * b.conversion == doctest::Approx(b.density_bound).epsilon(1e-15));
    CHECK(b.source == BoundSource::bessel_closed_form);
  }
  CHECK_THROWS_AS(bessel_bound(0), PreconditionError);
}

TEST_CASE("generic LP bound") {
  for (int n = 1; n <= 8; ++n) {
    const auto f = levensh_fn(n);
    const auto b = lp_bound(f, transform_at_zero(f), "Bessel construction");
    CHECK(b.center_density_bound == doctest::Approx(bessel_bound(n).center_density_bound).epsilon(1e-7));
    CHECK(b.center_density_bound >= bessel_bound(n).center_density_bound * (1.0 - 1e-9) - 1e-9);
    CHECK(b.center_density_upper >= b.center_density_bound);
    CHECK(b.source == BoundSource::generic_f);
  }
  SUBCASE("scaling f leaves the bound unchanged") {
    const auto f = levensh_fn(3);
    const RadialFunction g(3, [f](double x) { return 7.5 * f(x); }, Decay{7.5 * f.decay().C, 3.0, true, f.decay().from},
                           f.band_limit(), "7.5 f");
    const double a = lp_bound(f, transform_at_zero(f), "").center_density_bound;
    const double b = lp_bound(g, {7.5 * transform_at_zero(f).value, 0.0, "scaled"}, "").center_density_bound;
    CHECK(a == doctest::Approx(b).epsilon(1e-14));
  }
  SUBCASE("triangle in one dimension") {
    const auto f = triangle();
    const auto b = lp_bound(f, transform_at_zero(f), "Fejer kernel");
    CHECK(b.center_density_bound == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(b.center_density_bound >= 0.5 - 1e-14);
  }
  CHECK_THROWS_AS(lp_bound(gaussian(2), transform_at_zero(gaussian(2)), ""), PreconditionError);
  CHECK_THROWS_AS(lp_bound(levensh_fn(2), {0.0, 0.0, "zero"}, ""), PreconditionError);
}
