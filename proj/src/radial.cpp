#include "lpsphere/radial.hpp"

#include "lpsphere/errors.hpp"
#include "lpsphere/numerics.hpp"
#include "lpsphere/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace lpsphere {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dimension(int n) {
  if (n < 1) throw DomainError("dimension must be positive");
}

}  // namespace

RadialFunction::RadialFunction(int dimension, Profile profile, Decay decay, std::optional<double> band_limit,
                               std::string name) {
  require_dimension(dimension);
  if (!profile) throw PreconditionError("radial function needs a profile");
  if (!(decay.C > 0.0) || !(decay.eps > 0.0)) throw PreconditionError("decay constants must be positive");
  if (band_limit && !(*band_limit > 0.0)) throw PreconditionError("band limit must be positive");
  state_ = std::make_shared<const State>(
      State{dimension, std::move(profile), decay, band_limit, std::nullopt, std::nullopt, Decay{}, std::nullopt,
            false, false, std::move(name)});
}

double RadialFunction::envelope(double r) const {
  return state_->decay.C * std::pow(1.0 + r, -state_->dimension - state_->decay.eps);
}

RadialFunction RadialFunction::with_transform(Profile transform, Decay transform_decay,
                                             std::optional<double> transform_support) const {
  auto s = std::make_shared<State>(*state_);
  s->transform = std::move(transform);
  s->transform_decay = transform_decay;
  s->transform_support = transform_support;
  return RadialFunction(std::shared_ptr<const State>(std::move(s)));
}

RadialFunction RadialFunction::with_support(double radius) const {
  if (!(radius > 0.0)) throw PreconditionError("support radius must be positive");
  auto s = std::make_shared<State>(*state_);
  s->support = radius;
  return RadialFunction(std::shared_ptr<const State>(std::move(s)));
}

RadialFunction RadialFunction::with_monotone(bool profile, bool transform) const {
  auto s = std::make_shared<State>(*state_);
  s->monotone = profile;
  s->transform_monotone = transform;
  return RadialFunction(std::shared_ptr<const State>(std::move(s)));
}

namespace {

struct PanelTotals {
  numerics::CompensatedSum plain;
  numerics::CompensatedSum windowed;
  numerics::CompensatedSum error;
  double last_magnitude = 0.0;
};

// One Gauss–Legendre panel evaluated for both the plain and the windowed
// integrand; bisects while the 20-point and 2×10-point values disagree.
void integrate_panel(const std::function<double(double)>& h, double a, double b, double window_radius, double tol,
                     int depth, PanelTotals& out) {
  const auto& g20 = numerics::gauss_legendre(20);
  const auto& g10 = numerics::gauss_legendre(10);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double plain = 0.0;
  double windowed = 0.0;
  for (std::size_t i = 0; i < g20.nodes.size(); ++i) {
    const double s = mid + half * g20.nodes[i];
    const double v = g20.weights[i] * h(s);
    plain += v;
    windowed += window_radius > 0.0 ? v * numerics::smooth_window(s / window_radius) : v;
  }
  plain *= half;
  windowed *= half;
  double coarse = 0.0;
  for (const double c : {0.5 * (a + mid), 0.5 * (mid + b)}) {
    for (std::size_t i = 0; i < g10.nodes.size(); ++i) coarse += g10.weights[i] * h(c + 0.5 * half * g10.nodes[i]);
  }
  coarse *= 0.5 * half;
  const double diff = std::abs(plain - coarse);
  if (diff > tol && depth > 0) {
    integrate_panel(h, a, mid, window_radius, 0.5 * tol, depth - 1, out);
    integrate_panel(h, mid, b, window_radius, 0.5 * tol, depth - 1, out);
    return;
  }
  out.plain += plain;
  out.windowed += windowed;
  out.error += diff;
  out.last_magnitude = std::abs(plain);
}

// Bound on ∫_S^∞ |f(s) K_t(s)| ds from the decay envelope, where
// K_t(s) = (2π)^{n/2} s^{n-1} J_ν(2πts)/(2πts)^ν.
double tail_bound(const RadialFunction& f, double t, double S) {
  const int n = f.dimension();
  const double nu = 0.5 * n - 1.0;
  const Decay& d = f.decay();
  if (S < d.from) return std::numeric_limits<double>::infinity();
  // |J_ν(z)/z^ν| ≤ 1/(2^ν Γ(ν+1)) for ν ≥ -1/2.
  const double at_zero = 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
  double bound = at_zero * d.C * std::pow(S, -d.eps) / d.eps;
  if (t > 0.0) {
    // |J_ν(z)| ≤ √(2/π) z^{-1/2} for |ν| ≤ 1/2, ≤ 0.674885 z^{-1/3} otherwise.
    const double beta = nu <= 0.5 ? 0.5 : 1.0 / 3.0;
    const double cb = nu <= 0.5 ? std::sqrt(2.0 / kPi) : 0.674885;
    const double z_scale = 2.0 * kPi * t;
    const double k = std::pow(2.0 * kPi, 0.5 * n) * std::pow(z_scale, -nu - beta) * cb * d.C;
    const double p = d.eps + nu + beta;
    bound = std::min(bound, k * std::pow(S, -p) / p);
  }
  return bound;
}

}  // namespace

TransformResult radial_ft(const RadialFunction& f, double t, const TransformOptions& options) {
  if (!(t >= 0.0)) throw DomainError("radial_ft: radius must be non-negative");
  const int n = f.dimension();
  const Order nu = Order::of_dimension(n);
  const double c = std::pow(2.0 * kPi, 0.5 * n);
  const auto h = [&](double s) {
    if (s == 0.0) return n == 1 ? c * f(0.0) * bessel_j_scaled(nu, 0.0) : 0.0;
    return c * std::pow(s, n - 1) * f(s) * bessel_j_scaled(nu, 2.0 * kPi * t * s);
  };

  const double freq = std::max({t, f.band_limit().value_or(1.0), 1.0});
  const double width = 0.5 / freq;
  TransformResult out;
  out.radius = t;

  PanelTotals totals;
  const auto sweep = [&](double a, double b, double window_radius, double tol) {
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / width)));
    const double w = (b - a) / panels;
    const double panel_tol = tol * w / std::max(b, 1.0);
    for (int i = 0; i < panels; ++i) integrate_panel(h, a + i * w, a + (i + 1) * w, window_radius, panel_tol, 12, totals);
  };

  if (f.support()) {
    sweep(0.0, *f.support(), 0.0, options.abs_tol);
    out.value = totals.plain.value();
    out.est_error = totals.error.value();
    return out;
  }

  std::vector<double> windowed;
  double S_prev = 0.0;
  double S = 16.0;
  for (;;) {
    const double tol_guess = std::max(options.abs_tol, options.rel_tol * std::abs(totals.plain.value()));
    sweep(S_prev, S, S, 0.01 * tol_guess);
    windowed.push_back(totals.windowed.value());
    // The windowed integral at the next level reuses the plain part below S.
    totals.windowed = totals.plain;

    const double plain = totals.plain.value();
    const double tol = std::max(options.abs_tol, options.rel_tol * std::abs(plain));
    const double tail = tail_bound(f, t, S);
    const double plain_error = totals.error.value() + totals.last_magnitude + tail;
    if (plain_error <= tol) {
      out.value = plain;
      out.est_error = plain_error;
      return out;
    }
    const bool plain_hopeless = tail_bound(f, t, options.plain_radius_limit) > tol;
    const bool last_level = 2.0 * S > options.max_radius || (!plain_hopeless && S >= options.plain_radius_limit);
    if (windowed.size() >= 4 && (plain_hopeless || last_level)) {
      const std::size_t use = std::min<std::size_t>(windowed.size(), 6);
      double est = 0.0;
      const double value = numerics::richardson_inverse_powers(
          std::span<const double>(windowed).subspan(windowed.size() - use), &est);
      const double err = est + totals.error.value();
      if (err <= std::max(options.abs_tol, options.rel_tol * std::abs(value))) {
        out.value = value;
        out.est_error = err;
        out.extrapolated = true;
        return out;
      }
    }
    if (last_level) throw AccuracyError("radial_ft: transform did not converge", plain, plain_error);
    S_prev = S;
    S *= 2.0;
  }
}

Decay fit_decay(const RadialFunction::Profile& profile, int n, double eps, double r_max, double from) {
  double worst = 0.0;
  const auto visit = [&](double r) { worst = std::max(worst, std::abs(profile(r)) * std::pow(1.0 + r, n + eps)); };
  const double knee = std::max(from + 10.0, 10.0);
  for (double r = from; r <= std::min(knee, r_max); r += 0.005) visit(r);
  for (double r = knee; r <= r_max; r *= 1.002) visit(r);
  return Decay{1.1 * std::max(worst, 1e-300), eps, true, from};
}

RadialFunction gaussian(int n, double s) {
  require_dimension(n);
  if (!(s > 0.0)) throw DomainError("gaussian: scale must be positive");
  auto profile = [s](double r) { return std::exp(-kPi * s * r * r); };
  const double eps = 30.0;
  RadialFunction f(n, profile, fit_decay(profile, n, eps, 200.0), std::nullopt, "gaussian");
  auto transform = [n, s](double t) { return std::pow(s, -0.5 * n) * std::exp(-kPi * t * t / s); };
  return f.with_transform(transform, fit_decay(transform, n, eps, 200.0 * std::max(1.0, s))).with_monotone(true, true);
}

RadialFunction ball_indicator(int n, double R) {
  require_dimension(n);
  if (!(R > 0.0)) throw DomainError("ball_indicator: radius must be positive");
  auto profile = [R](double r) { return r <= R ? 1.0 : 0.0; };
  RadialFunction f(n, profile, Decay{std::pow(1.0 + R, n + 1.0), 1.0, false}, std::nullopt, "ball");
  auto transform = [n, R](double t) { return ball_ft(n, R, t); };
  // The transform decays only like t^{-(n+1)/2}: no admissible envelope.
  const Decay none{1.0, 1.0, false, std::numeric_limits<double>::infinity()};
  return f.with_support(R).with_transform(transform, none);
}

double ball_intersection_volume(int n, double R, double d) {
  require_dimension(n);
  if (!(R > 0.0)) throw DomainError("ball_intersection_volume: radius must be positive");
  d = std::abs(d);
  if (d >= 2.0 * R) return 0.0;
  // 2 V_{n-1} R^n ∫₀^{arccos(d/2R)} sin^n θ dθ.
  const double theta = std::acos(d / (2.0 * R));
  const auto integrand = [n](double x) { return std::pow(std::sin(x), n); };
  const double integral = numerics::integrate_adaptive(integrand, 0.0, theta, 1e-16, 1e-15).value;
  return 2.0 * ball_volume(n - 1, 1.0) * std::pow(R, n) * integral;
}

RadialFunction autocorr_fn(int n, double r) {
  require_dimension(n);
  if (!(r > 0.0)) throw DomainError("autocorr_fn: radius must be positive");
  const double R = 0.5 * r;
  auto profile = [n, R](double x) {
    const double v = ball_ft(n, R, x);
    return v * v;
  };
  RadialFunction f(n, profile, fit_decay(profile, n, 1.0, 2000.0, 8.0), r, "autocorr");
  auto transform = [n, R](double t) { return ball_intersection_volume(n, R, t); };
  return f.with_transform(transform, Decay{ball_volume(n, R) * std::pow(1.0 + r, n + 1.0), 1.0, false}, r)
      .with_monotone(false, true);
}

RadialFunction autocorr_squared_fn(int n, double r) {
  const RadialFunction g = autocorr_fn(n, 0.5 * r);
  auto profile = [g](double x) {
    const double v = g(x);
    return v * v;
  };
  return RadialFunction(n, profile, fit_decay(profile, n, n + 2.0, 2000.0, 8.0), r, "autocorr-squared");
}

double levensh_root(int n) {
  require_dimension(n);
  return bessel_root(Order::half_of(n), 1);
}

RadialFunction levensh_fn(int n) {
  require_dimension(n);
  const Order order = Order::half_of(n);
  const double j = levensh_root(n);
  const double jn = std::pow(j, n);
  // J_{n/2}'(j) = J_{n/2-1}(j) at a zero of J_{n/2}.
  const double slope = bessel_j(order.shifted(-1), j);
  auto profile = [n, order, j, jn, slope](double r) {
    if (std::abs(r - 1.0) < 1e-5) {
      // J(jr) ≈ J'(j) δ (1 - δ/(2j)) with δ = j(r-1), using J''(j) = -J'(j)/j.
      const double delta = j * (r - 1.0);
      const double factor = 1.0 - delta / (2.0 * j);
      return -slope * slope * j * j * (r - 1.0) * factor * factor / ((r + 1.0) * std::pow(r, n));
    }
    const double s = bessel_j_scaled(order, j * r);
    return jn * s * s / (1.0 - r * r);
  };
  return RadialFunction(n, profile, fit_decay(profile, n, 3.0, 2000.0, 8.0), j / kPi, "levensh");
}

}  // namespace lpsphere
