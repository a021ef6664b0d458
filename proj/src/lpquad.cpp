#include "lpsphere/lpquad.hpp"

#include "lpsphere/errors.hpp"
#include "lpsphere/numerics.hpp"
#include "lpsphere/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace lpsphere {

namespace {

constexpr double kPi = std::numbers::pi;

void require_rule_args(int n, double r, int M) {
  if (n < 1) throw PreconditionError("dimension must be at least 1");
  if (!(r > 0.0)) throw PreconditionError("band radius must be positive");
  if (M < 1) throw PreconditionError("node count must be at least 1");
}

QuadratureRule rule_skeleton(int n, double r, int M) {
  require_rule_args(n, r, M);
  QuadratureRule rule;
  rule.n = n;
  rule.r = r;
  rule.M = M;
  rule.nodes = bessel_roots(Order::half_of(n), M).roots;
  rule.weights.resize(M);
  rule.w0 = gamma(0.5 * n + 1.0) * std::pow(2.0, n) / (std::pow(kPi, 0.5 * n) * std::pow(r, n));
  return rule;
}

double weight_at(int n, double r, double lambda) {
  const double j = bessel_j(Order::of_dimension(n), lambda);
  return 4.0 * std::pow(lambda, n - 2.0) / (gamma(0.5 * n) * std::pow(kPi, 0.5 * n) * std::pow(r, n) * j * j);
}

// Σ_{m>M} w_m C (1+node_m)^{-n-eps} ≤ n V_n C node_M^{-eps} / eps asymptotically.
double envelope_tail(int n, const Decay& d, double last_node) {
  if (!(d.eps > 0.0) || last_node < d.from) return std::numeric_limits<double>::infinity();
  return n * ball_volume(n, 1.0) * d.C * std::pow(last_node, -d.eps) / d.eps;
}

// Terms t_m decaying like m^{-p}: Σ_{m>M} ≈ max|t| over the last tenth · M/(p-1).
double observed_tail(const std::vector<double>& terms, double p) {
  const std::size_t M = terms.size();
  if (M < 10) return std::numeric_limits<double>::infinity();
  double peak = 0.0;
  for (std::size_t m = M - M / 10; m < M; ++m) peak = std::max(peak, std::abs(terms[m]));
  return peak * static_cast<double>(M) / std::max(p - 1.0, 1e-3);
}

}  // namespace

QuadratureRule bgf_rule(int n, double r, int M) {
  QuadratureRule rule = rule_skeleton(n, r, M);
#pragma omp parallel for schedule(static)
  for (int m = 0; m < M; ++m) rule.weights[m] = weight_at(n, r, rule.nodes[m]);
  for (double& x : rule.nodes) x /= kPi * r;
  return rule;
}

QuadratureRule bgf_rule_serial(int n, double r, int M) {
  QuadratureRule rule = rule_skeleton(n, r, M);
  for (int m = 0; m < M; ++m) rule.weights[m] = weight_at(n, r, rule.nodes[m]);
  for (double& x : rule.nodes) x /= kPi * r;
  return rule;
}

QuadratureResult bgf_apply(const QuadratureRule& rule, const RadialFunction& f, const QuadratureOptions& options) {
  if (f.dimension() != rule.n) throw PreconditionError("function and rule dimensions differ");
  if (!f.band_limit()) throw PreconditionError("function has no known band limit");
  if (*f.band_limit() > rule.r * (1.0 + 1e-14)) throw PreconditionError("band limit exceeds the rule radius");
  std::vector<double> terms(rule.M);
  for (int m = 0; m < rule.M; ++m) terms[m] = rule.weights[m] * f(rule.nodes[m]);
  numerics::CompensatedSum sum;
  sum += rule.w0 * f(0.0);
  for (double t : terms) sum += t;

  QuadratureResult out;
  out.value = sum.value();
  out.envelope_tail = envelope_tail(rule.n, f.decay(), rule.nodes.back());
  out.observed_tail = std::min(observed_tail(terms, 1.0 + f.decay().eps), out.envelope_tail);
  const double limit = std::max(options.tolerance, options.tolerance * std::abs(out.value));
  if (out.observed_tail > limit) {
    std::ostringstream msg;
    msg << "quadrature tail " << out.observed_tail << " exceeds tolerance with M = " << rule.M;
    throw AccuracyError(msg.str(), out.value, out.observed_tail);
  }
  return out;
}

int choose_nodes(const RadialFunction& f, double r, double tolerance, int max_nodes) {
  const int n = f.dimension();
  for (int M = 16; M <= max_nodes; M *= 2) {
    const double last = bessel_root(Order::half_of(n), M) / (kPi * r);
    if (envelope_tail(n, f.decay(), last) < tolerance) return M;
  }
  std::ostringstream msg;
  msg << "no node count up to " << max_nodes << " brings the envelope tail below " << tolerance;
  throw ResourceError(msg.str(), "checked M = 16, 32, ..., " + std::to_string(max_nodes));
}

std::vector<double> dini_samples(const RadialFunction& f, double r, int M) {
  require_rule_args(f.dimension(), r, M);
  const auto roots = bessel_roots(Order::half_of(f.dimension()), M).roots;
  std::vector<double> s(M + 1);
  s[0] = f(0.0);
#pragma omp parallel for schedule(static)
  for (int m = 0; m < M; ++m) s[m + 1] = f(roots[m] / (2.0 * kPi * r));
  return s;
}

DiniResult dini_interpolate(int n, double r, const std::vector<double>& samples, double u, double tolerance) {
  if (samples.size() < 2) throw PreconditionError("need f(0) and at least one node sample");
  const int M = static_cast<int>(samples.size()) - 1;
  require_rule_args(n, r, M);
  if (!(u >= 0.0 && u < 1.0)) throw PreconditionError("u must lie in [0, 1)");
  const Order nu = Order::of_dimension(n);
  const double v = nu.value();
  const auto roots = bessel_roots(Order::half_of(n), M).roots;

  std::vector<double> terms(M);
  for (int m = 0; m < M; ++m) {
    const double lambda = roots[m];
    const double j = bessel_j(nu, lambda);
    // J_ν(λu)/u^ν = λ^ν · J_ν(λu)/(λu)^ν.
    const double basis = std::pow(lambda, v) * bessel_j_scaled(nu, lambda * u);
    terms[m] = 2.0 * std::pow(lambda / (2.0 * kPi * r), v) * samples[m + 1] / (j * j) * basis;
  }
  numerics::CompensatedSum sum;
  sum += 2.0 * gamma(v + 2.0) / std::pow(kPi * r, v) * samples[0];
  for (double t : terms) sum += t;
  const double scale = 2.0 * kPi * std::pow(r, v + 2.0);

  DiniResult out;
  out.value = sum.value() / scale;
  // Samples of an admissible f decay at least like λ^{-n-1}, so terms decay like m^{-2} or faster.
  out.tail_estimate = observed_tail(terms, 2.0) / scale;
  if (out.tail_estimate > std::max(tolerance, tolerance * std::abs(out.value))) {
    throw AccuracyError("Dini series tail exceeds tolerance", out.value, out.tail_estimate);
  }
  return out;
}

std::string to_string(BoundSource s) {
  return s == BoundSource::bessel_closed_form ? "bessel-closed-form" : "generic-f";
}

TransformValue transform_at_zero(const RadialFunction& f) {
  if (f.exact_transform()) return {(*f.exact_transform())(0.0), 0.0, "closed-form"};
  const TransformResult t = radial_ft(f, 0.0);
  return {t.value, t.est_error, t.extrapolated ? "radial_ft (extrapolated)" : "radial_ft"};
}

BoundResult lp_bound(const RadialFunction& f, const TransformValue& fhat0, const std::string& certificate,
                     double tolerance) {
  const int n = f.dimension();
  if (!(fhat0.value - fhat0.est_error > 0.0)) throw PreconditionError("hypothesis f^(0) > 0 fails");
  const double f0 = f(0.0);
  if (!(f0 > 0.0)) throw PreconditionError("f(0) must be positive");

  // f ≤ 0 on |x| ≥ 1: sample up to where the envelope certifies |f| ≤ tolerance·f(0).
  const Decay& d = f.decay();
  double cutoff = std::max(2.0, d.from);
  while (f.envelope(cutoff) > tolerance * f0 && cutoff < 1e6) cutoff *= 1.5;
  if (f.support()) cutoff = std::min(cutoff, *f.support());
  if (!f.support() && f.envelope(cutoff) > tolerance * f0) {
    throw PreconditionError("hypothesis f <= 0 for |x| >= 1 cannot be checked from the decay metadata");
  }
  const double oscillation = f.band_limit() ? *f.band_limit() : 1.0;
  const double step = std::min(1e-3, 1.0 / (16.0 * oscillation));
  const long samples = std::min(2'000'000L, static_cast<long>((cutoff - 1.0) / step) + 2);
  for (long i = 0; i < samples; ++i) {
    const double x = 1.0 + (cutoff - 1.0) * static_cast<double>(i) / static_cast<double>(samples - 1);
    if (f(x) > tolerance * f0) {
      std::ostringstream msg;
      msg << "hypothesis f <= 0 for |x| >= 1 fails at |x| = " << x;
      throw PreconditionError(msg.str());
    }
  }

  BoundResult out;
  out.n = n;
  out.conversion = ball_volume(n, 1.0);
  out.center_density_bound = f0 / (std::pow(2.0, n) * fhat0.value);
  out.center_density_upper = f0 / (std::pow(2.0, n) * (fhat0.value - fhat0.est_error));
  out.density_bound = out.center_density_bound * out.conversion;
  out.source = BoundSource::generic_f;
  out.certificate = certificate;
  out.fhat0_provenance = fhat0.provenance;
  return out;
}

BoundResult bessel_bound(int n) {
  if (n < 1) throw PreconditionError("dimension must be at least 1");
  const double j = bessel_root(Order::half_of(n), 1);
  const double g = gamma(0.5 * n + 1.0);
  BoundResult out;
  out.n = n;
  // Work in logs so large n does not overflow j^n.
  out.density_bound = std::exp(n * std::log(j) - 2.0 * std::log(g) - n * std::log(4.0));
  out.conversion = ball_volume(n, 1.0);
  out.center_density_bound = out.density_bound / out.conversion;
  out.center_density_upper = out.center_density_bound;
  out.source = BoundSource::bessel_closed_form;
  out.certificate = "closed form";
  out.fhat0_provenance = "closed form";
  return out;
}

}  // namespace lpsphere
