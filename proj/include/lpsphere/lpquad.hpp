#pragma once

// Linear-programming bounds for sphere packing and the band-limited quadrature
// behind them.  For radial f on R^n with supp f̂ ⊆ B_r and λ_m the positive zeros
// of J_{n/2},
//   f̂(0) = w0 f(0) + Σ_m w_m f(λ_m/(πr)),
//   w0  = Γ(n/2+1) 2^n / (π^{n/2} r^n),
//   w_m = 4 λ_m^{n-2} / (Γ(n/2) π^{n/2} r^n J_{n/2-1}(λ_m)²).

#include "lpsphere/radial.hpp"

#include <string>
#include <vector>

namespace lpsphere {

struct QuadratureRule {
  int n = 0;
  double r = 0.0;
  int M = 0;
  std::vector<double> nodes;
  double w0 = 0.0;
  std::vector<double> weights;
};

/// Nodes and weights for dimension n, band radius r and M nodes; the weights
/// are computed in parallel over m.
QuadratureRule bgf_rule(int n, double r, int M);
/// Single-threaded reference for bgf_rule.
QuadratureRule bgf_rule_serial(int n, double r, int M);

struct QuadratureResult {
  double value = 0.0;
  /// Σ_{m>M} w_m · envelope(node_m), using J_{n/2-1}(λ)² ≈ 2/(πλ) for the weights.
  double envelope_tail = 0.0;
  /// Tail extrapolated from the last tenth of the computed terms.
  double observed_tail = 0.0;
};

struct QuadratureOptions {
  /// AccuracyError when observed_tail exceeds max(tolerance, tolerance·|value|).
  double tolerance = 1e-8;
};

/// w0 f(0) + Σ w_m f(node_m).  Requires f.band_limit() ≤ rule.r.
QuadratureResult bgf_apply(const QuadratureRule& rule, const RadialFunction& f, const QuadratureOptions& options = {});

/// Smallest M (doubling from 16, at most max_nodes) whose envelope tail is
/// below tolerance; ResourceError when max_nodes is not enough.
int choose_nodes(const RadialFunction& f, double r, double tolerance = 1e-10, int max_nodes = 1 << 16);

/// f(0) followed by f(λ_m/(2πr)) for m = 1..M.
std::vector<double> dini_samples(const RadialFunction& f, double r, int M);

struct DiniResult {
  double value = 0.0;
  /// Magnitude of the truncated series tail, extrapolated from the last terms.
  double tail_estimate = 0.0;
};

/// f̂(r u) recovered from the samples by the truncated Dini series in
/// J_{n/2-1}(λ_m u)/u^{n/2-1}, u ∈ [0, 1).  AccuracyError when the tail
/// estimate exceeds tolerance.
DiniResult dini_interpolate(int n, double r, const std::vector<double>& samples, double u, double tolerance = 1e-6);

enum class BoundSource { bessel_closed_form, generic_f };

std::string to_string(BoundSource s);

/// f̂(0) with its origin; `est_error` widens the bound into an interval.
struct TransformValue {
  double value = 0.0;
  double est_error = 0.0;
  std::string provenance;
};

struct BoundResult {
  int n = 0;
  double density_bound = 0.0;
  double center_density_bound = 0.0;
  /// Upper end of the interval induced by the error in f̂(0).
  double center_density_upper = 0.0;
  /// density = center density · this (the volume of the unit n-ball).
  double conversion = 0.0;
  BoundSource source = BoundSource::generic_f;
  /// Why f̂ ≥ 0 holds; recorded, not verified.
  std::string certificate;
  std::string fhat0_provenance;
};

/// f(0) / (2^n f̂(0)) as a center-density bound.  Samples f on [1, cutoff]
/// (cutoff where the envelope drops below tolerance) and raises
/// PreconditionError on a positive value or a non-positive f̂(0).
BoundResult lp_bound(const RadialFunction& f, const TransformValue& fhat0, const std::string& certificate,
                     double tolerance = 1e-12);

/// Convenience: f̂(0) from the closed-form transform if present, else radial_ft.
TransformValue transform_at_zero(const RadialFunction& f);

/// Density bound j_{n/2}^n / (Γ(n/2+1)² 4^n).
BoundResult bessel_bound(int n);

}  // namespace lpsphere
