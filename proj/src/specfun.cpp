#include "lpsphere/specfun.hpp"

#include "lpsphere/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

namespace lpsphere {

namespace {

constexpr double kPi = std::numbers::pi;

// Below this argument (integer orders) the ascending series is used.
constexpr double kSeriesLimit = 15.0;

// Ascending series for J_ν(x)/x^ν, evaluated in extended precision.
long double scaled_series(double nu, double x) {
  const long double q = -0.25L * static_cast<long double>(x) * x;
  long double term = 1.0L / (std::pow(2.0L, static_cast<long double>(nu)) * std::tgamma(static_cast<long double>(nu) + 1.0L));
  long double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<long double>(k) * (k + nu));
    sum += term;
    if (std::fabs(term) < 1e-21L * std::fabs(sum) && k > 0.5 * x) break;
  }
  return sum;
}

// Hankel asymptotic expansion, valid for x well beyond ν²; used for ν ∈ {0, 1}.
double hankel_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
    if (std::abs(next) > std::abs(last) && k > 2) break;  // asymptotic series starts diverging
    term = next;
    last = next;
    const int sign = ((k / 2) % 2 == 0) ? 1 : -1;
    if (k % 2 == 0) {
      p += sign * term;
    } else {
      q += sign * term;
    }
    if (std::abs(term) < 1e-18) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// J at (base, base+1), where base ∈ {-1/2, 0}, then forward recurrence up to ν.
// Stable only when ν does not exceed x.
double upward(Order order, double x) {
  double prev;
  double cur;
  double mu;
  if (order.is_integer()) {
    prev = hankel_asymptotic(0.0, x);
    cur = hankel_asymptotic(1.0, x);
    mu = 1.0;
    if (order.twice() == 0) return prev;
  } else {
    const double amp = std::sqrt(2.0 / (kPi * x));
    prev = amp * std::cos(x);  // J_{-1/2}
    cur = amp * std::sin(x);   // J_{1/2}
    mu = 0.5;
    if (order.twice() == -1) return prev;
  }
  const double nu = order.value();
  while (mu < nu) {
    const double next = (2.0 * mu / x) * cur - prev;
    prev = cur;
    cur = next;
    mu += 1.0;
  }
  return cur;
}

bool use_series(Order order, double x) {
  const double nu = order.value();
  if (order.is_integer()) return x <= kSeriesLimit || x < nu + 2.0;
  return x < nu + 2.0;
}

}  // namespace

Order::Order(int twice_nu) : twice_nu_(twice_nu) {
  if (twice_nu < -1) throw DomainError("order must be at least -1/2 (got 2nu = " + std::to_string(twice_nu) + ")");
}

Order Order::from_value(double nu) {
  const double twice = 2.0 * nu;
  if (std::abs(twice - std::round(twice)) > 1e-12) throw DomainError("order must be a half-integer");
  return Order(static_cast<int>(std::lround(twice)));
}

double gamma(double x) {
  if (!(x > 0.0)) throw DomainError("gamma: argument must be positive");
  return std::tgamma(x);
}

double bessel_j_scaled(Order order, double x) {
  if (x < 0.0) throw DomainError("bessel_j: negative argument");
  const double nu = order.value();
  if (x == 0.0 || use_series(order, x)) return static_cast<double>(scaled_series(nu, x));
  return upward(order, x) / std::pow(x, nu);
}

double bessel_j(Order order, double x) {
  if (x < 0.0) throw DomainError("bessel_j: negative argument");
  const double nu = order.value();
  if (x == 0.0) {
    if (order.twice() == -1) throw DomainError("bessel_j: J_{-1/2} is singular at 0");
    return order.twice() == 0 ? 1.0 : 0.0;
  }
  if (use_series(order, x)) return static_cast<double>(scaled_series(nu, x) * std::pow(static_cast<long double>(x), static_cast<long double>(nu)));
  return upward(order, x);
}

double bessel_j_derivative(Order order, double x) {
  if (x == 0.0) {
    if (order.twice() == 2) return 0.5;
    if (order.twice() == 0 || order.twice() > 2) return 0.0;
    throw DomainError("bessel_j_derivative: singular at 0 for this order");
  }
  return order.value() / x * bessel_j(order, x) - bessel_j(order.shifted(1), x);
}

namespace {

double mcmahon_guess(double nu, int m) {
  const double beta = (m + 0.5 * nu - 0.25) * kPi;
  const double mu = 4.0 * nu * nu;
  const double e = 8.0 * beta;
  return beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e);
}

// Newton iteration kept inside the sign-change bracket [lo, hi].
double refine_root(Order order, int m, double lo, double hi) {
  double flo = bessel_j(order, lo);
  double x = mcmahon_guess(order.value(), m);
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double fx = bessel_j(order, x);
    if (fx == 0.0) return x;
    if ((fx > 0) == (flo > 0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    const double d = bessel_j_derivative(order, x);
    double next = d != 0.0 ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 4e-16 * x || hi - lo <= 4e-16 * x) return next;
    x = next;
  }
  return x;
}

struct RootCache {
  std::mutex mutex;
  std::map<int, std::vector<double>> roots;
};

RootCache& root_cache() {
  static RootCache cache;
  return cache;
}

// Extends `roots` (zeros of J_ν in increasing order) to at least `count` entries.
// Zeros of J_ν for ν ≥ -1/2 are more than 2.9 apart, so unit steps cannot skip one.
void extend_roots(Order order, std::vector<double>& roots, int count) {
  constexpr double kStep = 1.0;
  while (static_cast<int>(roots.size()) < count) {
    double a = roots.empty() ? std::max(0.25, order.value()) : roots.back() + kStep;
    if (roots.empty() && order.twice() == -1) a = 0.25;
    double fa = bessel_j(order, a);
    double b = a + kStep;
    double fb = bessel_j(order, b);
    while ((fa > 0) == (fb > 0) && fb != 0.0) {
      a = b;
      fa = fb;
      b += kStep;
      fb = bessel_j(order, b);
    }
    roots.push_back(fb == 0.0 ? b : refine_root(order, static_cast<int>(roots.size()) + 1, a, b));
  }
}

}  // namespace

double bessel_root(Order order, int m) {
  if (m < 1) throw DomainError("bessel_root: index must be at least 1");
  RootCache& cache = root_cache();
  std::lock_guard lock(cache.mutex);
  auto& roots = cache.roots[order.twice()];
  extend_roots(order, roots, m);
  return roots[m - 1];
}

RootTable bessel_roots(Order order, int count) {
  if (count < 0) throw DomainError("bessel_roots: negative count");
  RootCache& cache = root_cache();
  std::lock_guard lock(cache.mutex);
  auto& roots = cache.roots[order.twice()];
  extend_roots(order, roots, count);
  return RootTable{order, std::vector<double>(roots.begin(), roots.begin() + count)};
}

double laguerre(int k, double alpha, double x) {
  if (k < 0) throw DomainError("laguerre: negative degree");
  if (!(alpha > -1.0)) throw DomainError("laguerre: alpha must exceed -1");
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int j = 1; j < k; ++j) {
    const double next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double laguerre_majorant(int k, double alpha, double x) {
  // C(k+α, k-i) x^i / i!, built from i = 0 upward.
  double coeff = std::exp(std::lgamma(k + alpha + 1.0) - std::lgamma(k + 1.0) - std::lgamma(alpha + 1.0));
  double term = coeff;
  double sum = term;
  for (int i = 1; i <= k; ++i) {
    term *= x * (k - i + 1.0) / (static_cast<double>(i) * (i + alpha));
    sum += term;
  }
  return sum;
}

double omega_kernel(Order alpha, double x) {
  if (x < 0.0) throw DomainError("omega_kernel: negative argument");
  const double a = alpha.value();
  if (x < 1e-4) {
    double term = 1.0 / std::tgamma(a + 1.0);
    double sum = term;
    for (int j = 1; j < 12; ++j) {
      term *= -x / (j * (j + a));
      sum += term;
    }
    return sum;
  }
  return std::pow(2.0, a) * bessel_j_scaled(alpha, 2.0 * std::sqrt(x));
}

double ball_ft(int n, double R, double x) {
  if (n < 1) throw DomainError("ball_ft: dimension must be positive");
  if (!(R > 0.0)) throw DomainError("ball_ft: radius must be positive");
  if (x < 0.0) throw DomainError("ball_ft: negative radius argument");
  return std::pow(2.0 * kPi, 0.5 * n) * std::pow(R, n) * bessel_j_scaled(Order::half_of(n), 2.0 * kPi * R * x);
}

double ball_volume(int n, double R) {
  return std::pow(kPi, 0.5 * n) * std::pow(R, n) / std::tgamma(0.5 * n + 1.0);
}

}  // namespace lpsphere
