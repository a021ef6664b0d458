#include "lpsphere/errors.hpp"
#include "lpsphere/radial.hpp"
#include "lpsphere/silp.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace lpsphere;

namespace {

double closed_form_exp(double alpha, int j, double y) {
  return std::pow(y, alpha + 1.0) / std::pow(1.0 + y, j + alpha + 1.0);
}

HalfLineFunction inverse_cube() {
  return {[](double x) { return 1.0 / ((1.0 + x) * (1.0 + x) * (1.0 + x)); }, 1.0, 3.0, {}, "inverse-cube"};
}

HalfLineFunction sign_changing() {
  return {[](double x) { return x < 2.0 ? 0.5 * (1.0 - x) * (2.0 - x) : 0.0; }, 4.0, 0.0, {2.0}, "sign-changing"};
}

}  // namespace

TEST_CASE("Laguerre coefficients of e^{-x}") {
  const auto f = exponential_fn();
  CHECK(laguerre_coeff(f, Order(0), 0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  for (int twice : {0, 1, 2, 6}) {
    const Order alpha(twice);
    for (double y : {0.5, 1.0, 2.0}) {
      CHECK(laguerre_coeff(f, alpha, 0, y) == doctest::Approx(std::pow(y / (1 + y), alpha.value() + 1)));
      for (int j = 0; j <= 12; ++j)
        CHECK(std::abs(laguerre_coeff(f, alpha, j, y) - closed_form_exp(alpha.value(), j, y)) < 1e-12);
    }
  }
  CHECK(laguerre_coeff(f, Order(0), 0, 1e3) == doctest::Approx(0.999).epsilon(2e-3));
}

TEST_CASE("Laguerre coefficients of the Bessel kernel") {
  // ∫ e^{-x} x^{α/2} J_α(2√(bx)) L_j^α(x) dx = e^{-b} b^{j+α/2}/j!, so a_j = b^j e^{-b}/Γ(j+α+1), b = c/y.
  for (int twice : {0, 1, 4}) {
    const Order alpha(twice);
    const double c = 1.7;
    const auto f = omega_fn(alpha, c);
    for (double y : {0.5, 1.0, 3.0}) {
      const double b = c / y;
      for (int j = 0; j <= 10; ++j) {
        const double expected = std::pow(b, j) * std::exp(-b) / std::tgamma(j + alpha.value() + 1.0);
        CHECK(std::abs(laguerre_coeff(f, alpha, j, y) - expected) < 1e-11);
      }
    }
  }
}

TEST_CASE("adaptive fallback at kinks") {
  // f = (1 - x/2)⁺ has a_0(y) = ∫₀^{2y} (1 - x/(2y)) e^{-x} dx = 1 - (1 - e^{-2y})/(2y) for α = 0.
  const HalfLineFunction tent{[](double x) { return x < 2.0 ? 1.0 - 0.5 * x : 0.0; }, 1.0, 0.0, {2.0}, "tent"};
  for (double y : {0.25, 1.0, 5.0}) {
    const double expected = 1.0 - (1.0 - std::exp(-2.0 * y)) / (2.0 * y);
    CHECK(laguerre_coeff(tent, Order(0), 0, y) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("scale covariance") {
  const auto f = inverse_cube();
  for (double c : {0.5, 3.0}) {
    const auto fc = scaled(f, c);
    for (double y : {0.5, 1.0, 2.0})
      for (int j : {0, 3, 9})
        CHECK(std::abs(laguerre_coeff(fc, Order(1), j, y) - laguerre_coeff(f, Order(1), j, y / c)) < 1e-9);
  }
}

TEST_CASE("generating function of the unnormalized coefficients") {
  // Σ t^j ∫ f(x/y) L_j x^α e^{-x} = (1-t)^{-α-1} ∫ f(x/y) x^α e^{-x/(1-t)}, closed form for f = e^{-x}.
  const auto f = exponential_fn();
  for (int twice : {0, 3}) {
    const Order alpha(twice);
    const double a = alpha.value();
    for (double y : {0.5, 2.0}) {
      for (double t : {-0.3, 0.1, 0.3}) {
        double lhs = 0.0;
        for (int j = 0; j <= 40; ++j) lhs += std::pow(t, j) * laguerre_moment(f, alpha, j, y).value;
        const double rhs = std::pow(1 - t, -a - 1) * std::tgamma(a + 1) / std::pow(1 / y + 1 / (1 - t), a + 1);
        CHECK(std::abs(lhs - rhs) < 1e-7);
      }
    }
  }
}

TEST_CASE("Cesaro means") {
  const auto f = exponential_fn();
  SUBCASE("single term") {
    const double y = 1.5;
    const double x = 0.7;
    CHECK(cesaro_mean(f, Order(2), y, x, 0) ==
          doctest::Approx(laguerre_coeff(f, Order(2), 0, y) * std::exp(-0.5 * x * y)));
  }
  SUBCASE("weights against the mean of partial sums") {
    // (C,k) mean of partial sums s_i: Σ_i C(k-1+m-i, m-i) s_i / C(k+m, m).
    const int m = 5;
    const double k = 2.0;
    auto binom = [](double top, int bottom) {
      double b = 1.0;
      for (int l = 1; l <= bottom; ++l) b *= (top - bottom + l) / l;
      return b;
    };
    double partial = 0.0;
    double expected = 0.0;
    for (int i = 0; i <= m; ++i) {
      partial += binom(i + 1.0, i);  // L_i^1(0) = C(i+1, i)
      expected += binom(k - 1 + m - i, m - i) * partial;
    }
    expected /= binom(k + m, m);
    CHECK(cesaro_sum(std::vector<double>(m + 1, 1.0), Order(2), 0.0, k) == doctest::Approx(expected).epsilon(1e-14));
  }
  SUBCASE("uniform convergence improves with m") {
    const HalfLineFunction gauss{[](double x) { return std::exp(-x * x); }, 1.0, 0.0, {}, "gauss"};
    for (const auto& g : {f, inverse_cube(), gauss}) {
      double sup15 = 0.0;
      double sup60 = 0.0;
      for (int i = 0; i <= 40; ++i) {
        const double x = 0.5 * i;
        const double target = g(x) * std::exp(-0.5 * x);
        sup15 = std::max(sup15, std::abs(cesaro_mean(g, Order(0), 1.0, x, 15) - target));
        sup60 = std::max(sup60, std::abs(cesaro_mean(g, Order(0), 1.0, x, 60) - target));
      }
      CHECK(sup60 < sup15);
    }
  }
  CHECK_THROWS_AS(cesaro_mean(f, Order(2), 1.0, 1.0, 4, 1.2), PreconditionError);
}

TEST_CASE("grid certification") {
  const auto exp_report = silp_check(exponential_fn(), Order(1), default_y_grid(), 12);
  CHECK(exp_report.verdict == SilpVerdict::certified_on_grid);
  CHECK(exp_report.min_coeff > 0.0);
  CHECK(exp_report.coeffs.size() == 13);

  for (double c : {0.3, 2.0}) {
    CHECK(silp_check(omega_fn(Order(3), c), Order(3), default_y_grid(), 12).verdict ==
          SilpVerdict::certified_on_grid);
  }

  const auto bad = silp_check(sign_changing(), Order(0), default_y_grid(), 12);
  CHECK(bad.verdict != SilpVerdict::certified_on_grid);
  if (bad.verdict == SilpVerdict::violation_found) CHECK(bad.min_coeff < -bad.tolerance);

  const auto serial = silp_check_serial(inverse_cube(), Order(2), {0.5, 1.0, 2.0}, 8);
  const auto parallel = silp_check(inverse_cube(), Order(2), {0.5, 1.0, 2.0}, 8);
  CHECK(serial.coeffs == parallel.coeffs);
  CHECK(serial.min_coeff == parallel.min_coeff);

  CHECK_THROWS_AS(silp_check(exponential_fn(), Order(0), {}, 3), PreconditionError);
  CHECK_THROWS_AS(silp_check(exponential_fn(), Order(0), {-1.0}, 3), PreconditionError);
}

TEST_CASE("functions built from non-negative measures") {
  const Order alpha(1);
  const auto single = silp_from_measure({{1.0, std::tgamma(1.5)}}, alpha);
  CHECK(single(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(silp_from_measure({{1.0, -0.1}}, alpha), PreconditionError);
  CHECK_THROWS_AS(silp_from_measure({{0.0, 1.0}}, alpha), PreconditionError);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(0.1, 3.0);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  auto random_measure = [&] {
    std::vector<std::pair<double, double>> atoms;
    for (int i = 0; i < 3; ++i) atoms.emplace_back(pos(rng), weight(rng));
    return silp_from_measure(atoms, alpha);
  };
  for (int pair = 0; pair < 20; ++pair) {
    const auto f = random_measure();
    const auto g = random_measure();
    if (pair < 3) CHECK(silp_check(f, alpha, default_y_grid(), 10).min_coeff >= -1e-8);
    CHECK(silp_check(product(f, g), alpha, default_y_grid(), 10).min_coeff >= -1e-8);
  }
}

TEST_CASE("center density bound from SILP functions") {
  for (int n : {2, 3, 4, 8}) {
    const auto f = squared_radius_pullback(levensh_fn(n));
    const auto r = silp_bound(f, n);
    const double j = levensh_root(n);
    const double density = std::pow(j, n) / (std::pow(std::tgamma(0.5 * n + 1), 2) * std::pow(4.0, n));
    CHECK(r.density_bound == doctest::Approx(density).epsilon(1e-6));
    CHECK(r.certificate.verdict == SilpVerdict::certified_on_grid);
  }
  const auto f2 = squared_radius_pullback(levensh_fn(2));
  CHECK_THROWS_AS(silp_bound(f2, 1), PreconditionError);
  CHECK_THROWS_AS(silp_bound(exponential_fn(), 4), PreconditionError);  // e^{-x} > 0 on [1, ∞)
  const HalfLineFunction positive_at_1_5{
      [](double x) { return x < 2.0 ? (1.0 - x) * (1.5 - x) * (2.0 - x) / 3.0 : 0.0; }, 1.0, 4.0, {2.0}, "cubic"};
  CHECK_THROWS_AS(silp_bound(positive_at_1_5, 3), PreconditionError);
}
