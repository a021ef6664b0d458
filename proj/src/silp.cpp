#include "lpsphere/silp.hpp"

#include "lpsphere/errors.hpp"
#include "lpsphere/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace lpsphere {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kFirstRule = 16;
constexpr int kLastRule = 256;
constexpr double kAgreeRel = 1e-10;
constexpr double kAgreeAbs = 1e-14;
constexpr double kCancellation = 1e-14;

double log_norm(int j, double alpha) { return std::lgamma(j + 1.0) - std::lgamma(j + alpha + 1.0); }

void require_order(Order alpha) {
  if (alpha.twice() < -1) throw PreconditionError("SILP order must be at least -1/2");
}

CoeffResult gauss_laguerre_moment(const HalfLineFunction& f, double alpha, int j, double y, bool& converged) {
  CoeffResult out;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (int nodes = kFirstRule; nodes <= kLastRule; nodes *= 2) {
    const auto& rule = numerics::gauss_laguerre(nodes, alpha);
    numerics::CompensatedSum sum;
    double scale = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      if (rule.weights[i] == 0.0) continue;
      const double x = rule.nodes[i];
      const double term = rule.weights[i] * f(x / y) * laguerre(j, alpha, x);
      sum += term;
      scale += std::abs(term);
    }
    const double value = sum.value();
    if (std::isfinite(previous)) {
      const double diff = std::abs(value - previous);
      // Cancellation between terms limits the attainable agreement.
      const double floor = std::max(kAgreeAbs, kCancellation * scale);
      if (diff <= std::max(floor, kAgreeRel * std::abs(value))) {
        out.value = value;
        out.est_error = diff;
        out.nodes = nodes;
        converged = true;
        return out;
      }
      out.est_error = diff;
    }
    previous = value;
    out.value = value;
  }
  converged = false;
  return out;
}

CoeffResult adaptive_moment(const HalfLineFunction& f, double alpha, int j, double y) {
  // In u = √x the weight 2u^{2α+1} e^{-u²} is smooth for half-integer α.
  auto weighted = [&](double u) {
    const double x = u * u;
    return 2.0 * f(x / y) * laguerre(j, alpha, x) * std::pow(u, 2.0 * alpha + 1.0) * std::exp(-x);
  };
  auto majorant = [&](double x) {
    return f.envelope(x / y) * laguerre_majorant(j, alpha, x) * std::pow(x, alpha) * std::exp(-x);
  };
  // Cut where the majorant tail is negligible.
  double cut = std::max(40.0, 4.0 * j + 20.0);
  while (majorant(cut) > 1e-18 && cut < 2000.0) cut *= 1.25;
  const numerics::IntegralResult tail = numerics::integrate_to_infinity(majorant, cut, 1e-16);

  std::vector<double> edges{0.0};
  for (double b : f.breakpoints)
    if (b > 0.0 && b * y < cut) edges.push_back(std::sqrt(b * y));
  for (double e : {1.0, 2.0, 4.0})
    if (e * e < cut) edges.push_back(e);
  edges.push_back(std::sqrt(cut));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  numerics::CompensatedSum sum;
  double err = tail.value + tail.est_error;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const auto piece = numerics::integrate_adaptive(weighted, edges[i], edges[i + 1], 1e-15, 1e-13, 40);
    sum += piece.value;
    err += piece.est_error;
  }
  CoeffResult out{sum.value(), err, 0};
  if (err > std::max(1e-11, 1e-9 * std::abs(out.value))) {
    throw AccuracyError("Laguerre coefficient quadrature did not converge", out.value, err);
  }
  return out;
}

SilpReport make_report(Order alpha, const std::vector<double>& y_grid, int j_max, double tolerance) {
  require_order(alpha);
  if (j_max < 0) throw PreconditionError("j_max must be non-negative");
  if (y_grid.empty()) throw PreconditionError("y grid is empty");
  for (double y : y_grid)
    if (!(y > 0.0)) throw PreconditionError("y grid values must be positive");
  if (!(tolerance > 0.0)) throw PreconditionError("tolerance must be positive");
  SilpReport r;
  r.alpha = alpha;
  r.y_grid = y_grid;
  r.j_max = j_max;
  r.tolerance = tolerance;
  r.coeffs.assign(j_max + 1, std::vector<double>(y_grid.size(), 0.0));
  return r;
}

double cell(const HalfLineFunction& f, Order alpha, int j, double y) {
  try {
    return laguerre_coeff(f, alpha, j, y);
  } catch (const AccuracyError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

void finish_report(SilpReport& r) {
  r.min_coeff = std::numeric_limits<double>::infinity();
  r.failed_cells = 0;
  for (int j = 0; j <= r.j_max; ++j) {
    for (std::size_t i = 0; i < r.y_grid.size(); ++i) {
      const double a = r.coeffs[j][i];
      if (std::isnan(a)) {
        ++r.failed_cells;
      } else if (a < r.min_coeff) {
        r.min_coeff = a;
        r.argmin_j = j;
        r.argmin_y = r.y_grid[i];
      }
    }
  }
  if (r.min_coeff < -r.tolerance) {
    r.verdict = SilpVerdict::violation_found;
  } else if (r.failed_cells > 0) {
    r.verdict = SilpVerdict::inconclusive;
  } else {
    r.verdict = SilpVerdict::certified_on_grid;
  }
}

}  // namespace

double HalfLineFunction::envelope(double x) const { return bound * std::pow(1.0 + x, -power); }

HalfLineFunction exponential_fn() {
  // e^{-x} (1+x)^p ≤ (p/e)^p e for p ≥ 1; p = 4 gives bound 4⁴ e^{-3}.
  return {[](double x) { return std::exp(-x); }, std::pow(4.0, 4) * std::exp(-3.0), 4.0, {}, "exp"};
}

HalfLineFunction omega_fn(Order alpha, double c) {
  require_order(alpha);
  if (!(c > 0.0)) throw PreconditionError("omega_fn: scale must be positive");
  // |x^{-α/2} J_α(2√x)| ≤ 1/Γ(α+1) and decays like x^{-α/2-1/4}; we record only the bound.
  return {[alpha, c](double x) { return omega_kernel(alpha, c * x); }, 1.0 / gamma(alpha.value() + 1.0), 0.0, {},
          "omega"};
}

HalfLineFunction scaled(const HalfLineFunction& g, double c) {
  if (!(c > 0.0)) throw PreconditionError("scaled: factor must be positive");
  HalfLineFunction out = g;
  out.value = [v = g.value, c](double x) { return v(c * x); };
  // (1+x)/(1+cx) ≤ max(1, 1/c).
  out.bound = g.bound * std::pow(std::max(1.0, 1.0 / c), g.power);
  for (double& b : out.breakpoints) b /= c;
  out.name = g.name + "*scaled";
  return out;
}

HalfLineFunction product(const HalfLineFunction& f, const HalfLineFunction& g) {
  HalfLineFunction out;
  out.value = [a = f.value, b = g.value](double x) { return a(x) * b(x); };
  out.bound = f.bound * g.bound;
  out.power = f.power + g.power;
  out.breakpoints = f.breakpoints;
  out.breakpoints.insert(out.breakpoints.end(), g.breakpoints.begin(), g.breakpoints.end());
  out.name = f.name + "*" + g.name;
  return out;
}

HalfLineFunction squared_radius_pullback(const RadialFunction& f) {
  const double f0 = f(0.0);
  if (f0 == 0.0) throw PreconditionError("pullback needs f(0) != 0");
  const Decay& d = f.decay();
  const double exponent = f.dimension() + d.eps;
  // Below decay.from the envelope constant is widened to cover sampled values.
  double c = d.C;
  if (d.from > 0.0) {
    if (!std::isfinite(d.from)) throw PreconditionError("pullback needs decay metadata");
    for (int i = 0; i <= 4000; ++i) {
      const double r = d.from * i / 4000.0;
      c = std::max(c, 1.1 * std::abs(f(r)) * std::pow(1.0 + r, exponent));
    }
  }
  // (1+√x)² ≥ 1+x turns the radial envelope into one in x.
  return {[f, f0](double x) { return f(std::sqrt(x)) / f0; }, c / std::abs(f0), 0.5 * exponent, {},
          f.name() + "(sqrt x)"};
}

CoeffResult laguerre_moment(const HalfLineFunction& f, Order alpha, int j, double y) {
  require_order(alpha);
  if (j < 0) throw PreconditionError("Laguerre index must be non-negative");
  if (!(y > 0.0)) throw PreconditionError("Laguerre scale y must be positive");
  const double a = alpha.value();
  if (f.breakpoints.empty()) {
    bool converged = false;
    const CoeffResult gl = gauss_laguerre_moment(f, a, j, y, converged);
    if (converged) return gl;
  }
  return adaptive_moment(f, a, j, y);
}

double laguerre_coeff(const HalfLineFunction& f, Order alpha, int j, double y) {
  const CoeffResult m = laguerre_moment(f, alpha, j, y);
  return m.value * std::exp(log_norm(j, alpha.value()));
}

std::vector<double> cesaro_weights(int m, double k) {
  if (m < 0) throw PreconditionError("Cesaro index must be non-negative");
  if (!(k > -1.0)) throw PreconditionError("Cesaro order must exceed -1");
  // C(k+i, i) for i = 0..m.
  std::vector<double> binom(m + 1, 1.0);
  for (int i = 1; i <= m; ++i) binom[i] = binom[i - 1] * (k + i) / i;
  std::vector<double> w(m + 1);
  for (int j = 0; j <= m; ++j) w[j] = binom[m - j] / binom[m];
  return w;
}

double cesaro_sum(const std::vector<double>& coeffs, Order alpha, double z, double k) {
  if (coeffs.empty()) return 0.0;
  const int m = static_cast<int>(coeffs.size()) - 1;
  const auto w = cesaro_weights(m, k);
  numerics::CompensatedSum sum;
  for (int j = 0; j <= m; ++j) sum += w[j] * coeffs[j] * laguerre(j, alpha, z);
  return sum.value();
}

double cesaro_mean(const HalfLineFunction& f, Order alpha, double y, double x, int m, double k) {
  require_order(alpha);
  if (!(k > alpha.value() + 0.5)) throw PreconditionError("Cesaro order must exceed alpha + 1/2");
  std::vector<double> a(m + 1);
  for (int j = 0; j <= m; ++j) a[j] = laguerre_coeff(f, alpha, j, y);
  return cesaro_sum(a, alpha, x * y, k) * std::exp(-0.5 * x * y);
}

double cesaro_mean(const HalfLineFunction& f, Order alpha, double y, double x, int m) {
  return cesaro_mean(f, alpha, y, x, m, alpha.value() + 1.0);
}

std::string to_string(SilpVerdict v) {
  switch (v) {
    case SilpVerdict::certified_on_grid:
      return "certified-nonnegative-on-grid";
    case SilpVerdict::violation_found:
      return "violation-found";
    case SilpVerdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

SilpReport silp_check(const HalfLineFunction& f, Order alpha, const std::vector<double>& y_grid, int j_max,
                      double tolerance) {
  SilpReport r = make_report(alpha, y_grid, j_max, tolerance);
  const int cols = static_cast<int>(y_grid.size());
  const int cells = (j_max + 1) * cols;
#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < cells; ++c) {
    const int j = c / cols;
    const int i = c % cols;
    r.coeffs[j][i] = cell(f, alpha, j, y_grid[i]);
  }
  finish_report(r);
  return r;
}

SilpReport silp_check_serial(const HalfLineFunction& f, Order alpha, const std::vector<double>& y_grid, int j_max,
                             double tolerance) {
  SilpReport r = make_report(alpha, y_grid, j_max, tolerance);
  for (int j = 0; j <= j_max; ++j)
    for (std::size_t i = 0; i < y_grid.size(); ++i) r.coeffs[j][i] = cell(f, alpha, j, y_grid[i]);
  finish_report(r);
  return r;
}

std::vector<double> default_y_grid() { return {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}; }

HalfLineFunction silp_from_measure(const std::vector<std::pair<double, double>>& masses, Order alpha) {
  require_order(alpha);
  if (masses.empty()) throw PreconditionError("measure has no atoms");
  double total = 0.0;
  for (const auto& [y, w] : masses) {
    if (!(y > 0.0)) throw PreconditionError("atom positions must be positive");
    if (!(w >= 0.0)) throw PreconditionError("atom weights must be non-negative");
    total += w;
  }
  auto value = [masses, alpha](double x) {
    numerics::CompensatedSum sum;
    for (const auto& [y, w] : masses) sum += w * omega_kernel(alpha, x * y);
    return sum.value();
  };
  return {value, total / gamma(alpha.value() + 1.0), 0.0, {}, "measure"};
}

SilpBoundResult silp_bound(const HalfLineFunction& f, int n, double tolerance) {
  if (n <= 1) throw PreconditionError("the bound needs dimension n > 1");
  if (std::abs(f(0.0) - 1.0) > 1e-12) throw PreconditionError("hypothesis f(0) = 1 fails");
  if (!(f.power > 0.5 * n)) {
    throw PreconditionError("hypothesis of integrability fails: decay power must exceed n/2");
  }

  // Sign on [1, ∞): samples uniform in √x up to where the envelope is below tolerance.
  double last = 2.0;
  while (f.envelope(last) > tolerance && last < 1e12) last *= 2.0;
  if (f.envelope(last) > tolerance) throw PreconditionError("hypothesis f <= 0 on [1, inf) cannot be checked");
  const double s0 = 1.0;
  const double s1 = std::sqrt(last);
  for (int i = 0; i < 1000; ++i) {
    const double s = s0 + (s1 - s0) * i / 999.0;
    const double x = s * s;
    if (f(x) > tolerance) {
      std::ostringstream msg;
      msg << "hypothesis f <= 0 on [1, inf) fails at x = " << x;
      throw PreconditionError(msg.str());
    }
  }

  const Order alpha = Order::of_dimension(n);
  SilpReport cert = silp_check(f, alpha, default_y_grid(), 12);
  if (cert.verdict != SilpVerdict::certified_on_grid) {
    throw PreconditionError("hypothesis f is (n/2-1)-SILP fails on the grid: " + to_string(cert.verdict));
  }

  // ∫₀^∞ f(x) x^{n/2-1} dx = 2/(n V_n) ∫_{R^n} f(|v|²) dv, evaluated as a radial transform at 0.
  const double p = f.power;
  Decay decay{f.bound * std::pow(2.0, p), 2.0 * p - n, true, 0.0};
  RadialFunction radial(n, [v = f.value](double r) { return v(r * r); }, decay, std::nullopt, f.name);
  const TransformResult t = radial_ft(radial, 0.0);
  const double unit = n * ball_volume(n, 1.0);
  SilpBoundResult out;
  out.n = n;
  out.integral = 2.0 * t.value / unit;
  out.integral_error = 2.0 * t.est_error / unit;
  if (!(out.integral - out.integral_error > 0.0)) {
    throw DegenerateBoundError("the normalizing integral is not positive; the bound would be vacuous");
  }
  out.center_density_bound = gamma(0.5 * n) / (std::pow(2.0, n) * std::pow(kPi, 0.5 * n) * out.integral);
  out.density_bound = out.center_density_bound * ball_volume(n, 1.0);
  out.certificate = std::move(cert);
  return out;
}

}  // namespace lpsphere
