// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "lpsphere/lattice.hpp"
#include "lpsphere/lpquad.hpp"
#include "lpsphere/qseries.hpp"
#include "lpsphere/radial.hpp"
#include "lpsphere/silp.hpp"
#include "lpsphere/specfun.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace lpsphere;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(const std::string& name, const std::function<void(Verdict&)>& body, double time_limit = 0.0) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail << " [exception: " << e.what() << "]";
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit > 0.0 && seconds >= time_limit) {
    v.pass = false;
    v.detail << " [over time limit " << time_limit << " s]";
  }
  if (!v.pass) ++failures;
  std::printf("%s %s:%s (%.2f s)\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.str().c_str(), seconds);
  std::fflush(stdout);
}

// Independent oracles: the C++ standard library's Bessel function and Γ.
double std_bessel_root(double nu, int m) {
  int found = 0;
  double a = 0.5;
  double fa = std::cyl_bessel_j(nu, a);
  for (double b = a + 0.05;; b += 0.05) {
    const double fb = std::cyl_bessel_j(nu, b);
    if (fa * fb < 0.0 && ++found == m) {
      double lo = b - 0.05;
      double hi = b;
      for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (std::cyl_bessel_j(nu, lo) * std::cyl_bessel_j(nu, mid) <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    fa = fb;
  }
}

double std_ball_volume(int n, double R) { return std::pow(kPi, 0.5 * n) * std::pow(R, n) / std::tgamma(0.5 * n + 1.0); }

double std_density_bound(int n) {
  const double j = std_bessel_root(0.5 * n, 1);
  return std::pow(j, n) / (std::pow(std::tgamma(0.5 * n + 1.0), 2) * std::pow(4.0, n));
}

}  // namespace

int main() {
  criterion(
      "theta72-extremal-series",
      [](Verdict& v) {
        const QSeries s = theta72(16);
        v.require(s.all_integral(), "integral coefficients");
        v.require(s[0] == 1, "constant term 1");
        for (int k = 1; k <= 3; ++k) v.require(s[k] == 0, "zero at norm " + std::to_string(2 * k));
        int negative = 0;
        for (int k = 0; k <= 16; ++k) negative += s[k] < 0;
        v.require(negative == 0, "no negative coefficient");
        v.detail << " K=16, coefficient at norm 8 = " << to_string(s[4]) << ", negatives = " << negative;
      },
      10.0);

  criterion(
      "quadrature-identity",
      [](Verdict& v) {
        double worst = 0.0;
        for (int n = 2; n <= 8; ++n) {
          for (double r : {1.0, 2.0}) {
            const double vol = std_ball_volume(n, 0.5 * r);
            const double value = bgf_apply(bgf_rule(n, r, 400), autocorr_fn(n, r)).value;
            worst = std::max(worst, std::abs(value - vol) / vol);
          }
        }
        v.require(worst < 1e-8, "relative error < 1e-8");
        v.detail << " n=2..8, r in {1,2}, M=400, max relative error " << worst;
      },
      30.0);

  criterion("optimality-equality", [](Verdict& v) {
    double worst_identity = 0.0;
    double worst_bound = 0.0;
    for (int n = 1; n <= 8; ++n) {
      const RadialFunction f = levensh_fn(n);
      const TransformResult fhat0 = radial_ft(f, 0.0);
      const double w0 = bgf_rule(n, levensh_root(n) / kPi, 1).w0;
      worst_identity = std::max(worst_identity, std::abs(w0 * f(0.0) - fhat0.value) / fhat0.value);
      const BoundResult lp = lp_bound(f, {fhat0.value, fhat0.est_error, "radial_ft"}, "Bessel construction");
      const double closed = bessel_bound(n).center_density_bound;
      worst_bound = std::max(worst_bound, std::abs(lp.center_density_bound - closed) / closed);
    }
    v.require(worst_identity < 1e-7, "|w0 f(0) - f^(0)|/f^(0) < 1e-7");
    v.require(worst_bound < 1e-7, "LP bound equals closed form to 1e-7");
    v.detail << " n=1..8, max identity residual " << worst_identity << ", max bound mismatch " << worst_bound;
  });

  criterion("closed-form-bounds", [](Verdict& v) {
    const double b1 = bessel_bound(1).density_bound;
    const double b2 = bessel_bound(2).density_bound;
    const double b8 = bessel_bound(8).density_bound;
    v.require(std::abs(b1 - 1.0) < 1e-12, "n=1 bound is 1");
    v.require(std::abs(b2 - std_density_bound(2)) < 1e-4 && std::abs(b2 - 0.91764) < 1e-4, "n=2 value");
    v.require(std::abs(b8 - std_density_bound(8)) < 1e-4 && std::abs(b8 - 0.29130) < 1e-4, "n=8 value");
    // Achieved densities: Z (sharp), hexagonal, E8.
    v.require(b1 >= 1.0 - 1e-12, "n=1 bound reaches the density of Z");
    v.require(b2 > kPi / std::sqrt(12.0), "n=2 bound above hexagonal density");
    v.require(b8 > std::pow(kPi, 4) / 384.0, "n=8 bound above E8 density");
    v.detail << " n=1: " << b1 << " (equals density 1 of Z), n=2: " << b2 << " > " << kPi / std::sqrt(12.0)
             << ", n=8: " << b8 << " > " << std::pow(kPi, 4) / 384.0;
  });

  criterion("theta-laguerre-positivity", [](Verdict& v) {
    double least = INFINITY;
    for (const char* name : {"z1", "z2", "z3", "z4", "d4", "e8"}) {
      for (double y : {0.5, 1.0, 2.0}) {
        for (const auto& s : laguerre_positivity_check(builtin(name), 15, y)) least = std::min(least, s.value);
      }
    }
    v.require(least >= -1e-9, "all sums >= -1e-9");
    v.detail << " Z^1..Z^4, D4, E8; k<=15; y in {0.5,1,2}; least sum " << least;
  });

  criterion("theta-transform-and-poisson", [](Verdict& v) {
    double worst = 0.0;
    for (const char* name : {"z1", "z2", "d4", "e8"})
      for (double y : {1.0, kPi, 5.0}) worst = std::max(worst, theta_transform_check(builtin(name), y));
    const double p1 = poisson_check(builtin("z1"), gaussian(1), {}).residual;
    const double p2 = poisson_check(builtin("z1"), gaussian(1), {Rational(1, 2)}).residual;
    const double p3 = poisson_check(builtin("e8"), gaussian(8), {}).residual;
    v.require(worst < 1e-9, "theta transform residual < 1e-9");
    v.require(std::max({p1, p2, p3}) < 1e-9, "Poisson residual < 1e-9");
    v.detail << " transform max residual " << worst << "; Poisson Z1 v=0: " << p1 << ", Z1 v=1/2: " << p2
             << ", E8 v=0: " << p3;
  });

  criterion("laguerre-coefficients-and-products", [](Verdict& v) {
    double worst = 0.0;
    const auto f = exponential_fn();
    for (int twice : {0, 1, 2, 6}) {
      const double a = 0.5 * twice;
      for (double y : {0.5, 1.0, 2.0}) {
        for (int j = 0; j <= 12; ++j) {
          const double expected = std::pow(y, a + 1.0) / std::pow(1.0 + y, j + a + 1.0);
          worst = std::max(worst, std::abs(laguerre_coeff(f, Order(twice), j, y) - expected));
        }
      }
    }
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> pos(0.1, 3.0);
    std::uniform_real_distribution<double> weight(0.0, 1.0);
    const Order alpha(2);
    auto measure = [&] {
      std::vector<std::pair<double, double>> atoms;
      for (int i = 0; i < 3; ++i) atoms.emplace_back(pos(rng), weight(rng));
      return silp_from_measure(atoms, alpha);
    };
    double least = INFINITY;
    int failed = 0;
    for (int p = 0; p < 20; ++p) {
      const auto g = measure();
      const auto h = measure();
      const SilpReport r = silp_check(product(g, h), alpha, default_y_grid(), 12, 1e-8);
      least = std::min(least, r.min_coeff);
      failed += r.failed_cells;
    }
    v.require(worst < 1e-9, "closed form to 1e-9");
    v.require(least >= -1e-8 && failed == 0, "product coefficients >= -1e-8");
    v.detail << " closed-form max error " << worst << "; 20 product pairs, least coefficient " << least;
  });

  criterion("laguerre-bessel-and-cesaro-convergence", [](Verdict& v) {
    for (int twice : {0, 1, 2, 6}) {
      const Order alpha(twice);
      double err[2] = {0.0, 0.0};
      int slot = 0;
      for (int k : {100, 1000}) {
        for (int i = 0; i <= 500; ++i) {
          const double x = 0.1 * i;
          const double lhs = std::pow(k, -alpha.value()) * laguerre(k, alpha, x / k) * std::exp(-x / k);
          err[slot] = std::max(err[slot], std::abs(lhs - omega_kernel(alpha, x)));
        }
        ++slot;
      }
      v.require(err[1] < err[0], "Laguerre->Bessel error decreases");
      v.detail << " alpha=" << alpha.value() << ": " << err[0] << " -> " << err[1] << ";";
    }
    const HalfLineFunction gauss{[](double x) { return std::exp(-x * x); }, 1.0, 0.0, {}, "gauss"};
    const HalfLineFunction cube{[](double x) { return std::pow(1.0 + x, -3.0); }, 1.0, 3.0, {}, "inverse-cube"};
    for (const auto& g : {exponential_fn(), cube, gauss}) {
      double sup[2] = {0.0, 0.0};
      for (int i = 0; i <= 40; ++i) {
        const double x = 0.5 * i;
        const double target = g(x) * std::exp(-0.5 * x);
        sup[0] = std::max(sup[0], std::abs(cesaro_mean(g, Order(0), 1.0, x, 15) - target));
        sup[1] = std::max(sup[1], std::abs(cesaro_mean(g, Order(0), 1.0, x, 60) - target));
      }
      v.require(sup[1] < sup[0], "Cesaro error decreases for " + g.name);
      v.detail << " Cesaro " << g.name << ": " << sup[0] << " -> " << sup[1] << ";";
    }
  });

  criterion("center-density", [](Verdict& v) {
    double worst = 0.0;
    for (const char* name : {"z1", "z2", "z3", "z4", "e8"}) {
      const CenterDensity c = center_density(builtin(name));
      worst = std::max(worst, std::abs(c.limit - c.algebraic));
    }
    const CenterDensity e8 = center_density(builtin("e8"));
    v.require(std::abs(e8.algebraic - 1.0 / 16.0) < 1e-15, "E8 algebraic value 1/16");
    v.require(worst < 1e-5, "limit agrees with algebraic value to 1e-5");
    const ShellMap s = shells(builtin("e8"), Rational(4));
    const QSeries e4 = eisenstein_e4(2);
    const bool match = s.entries.at(Rational(2)) == 240 && s.entries.at(Rational(4)) == 2160 &&
                       e4[1] == 240 && e4[2] == 2160;
    v.require(match, "E8 shells 240, 2160 from enumeration and E4");
    v.detail << " max |limit - algebraic| " << worst << "; E8 shells " << to_string(s.entries.at(Rational(2)))
             << ", " << to_string(s.entries.at(Rational(4)));
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
