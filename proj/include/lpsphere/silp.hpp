#pragma once

// Scale-invariant Laguerre positivity.  For f on [0, ∞) and α ≥ -1/2 the
// normalized coefficients are
//   a_j(y) = j!/Γ(j+α+1) ∫₀^∞ f(x/y) L_j^α(x) x^α e^{-x} dx,
// and f is α-SILP when every a_j(y) is non-negative.  Everything here works on
// finite (j, y) grids; a certified verdict never extends beyond the grid.

#include "lpsphere/radial.hpp"
#include "lpsphere/specfun.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace lpsphere {

/// A function on [0, ∞) with |f(x)| ≤ bound · (1 + x)^{-power}.  Evaluations
/// must be pure (they run concurrently).
struct HalfLineFunction {
  std::function<double(double)> value;
  double bound = 1.0;
  double power = 0.0;
  /// Points where f is not smooth; quadrature splits there.
  std::vector<double> breakpoints;
  std::string name;

  double operator()(double x) const { return value(x); }
  double envelope(double x) const;
};

/// e^{-x}.
HalfLineFunction exponential_fn();
/// omega_kernel(α, c x).
HalfLineFunction omega_fn(Order alpha, double c);
/// x ↦ g(c x).
HalfLineFunction scaled(const HalfLineFunction& g, double c);
/// Pointwise product.
HalfLineFunction product(const HalfLineFunction& f, const HalfLineFunction& g);
/// x ↦ f(√x) / f(0) for a radial profile f (the pullback to squared radius).
HalfLineFunction squared_radius_pullback(const RadialFunction& f);

struct CoeffResult {
  double value = 0.0;
  double est_error = 0.0;
  /// Nodes of the final Gauss–Laguerre rule, 0 when the adaptive fallback was used.
  int nodes = 0;
};

/// ∫₀^∞ f(x/y) L_j^α(x) x^α e^{-x} dx without the j!/Γ(j+α+1) normalization.
CoeffResult laguerre_moment(const HalfLineFunction& f, Order alpha, int j, double y);

/// Normalized a_j(y).  Throws AccuracyError when neither the doubled
/// Gauss–Laguerre rules nor the adaptive fallback converge.
double laguerre_coeff(const HalfLineFunction& f, Order alpha, int j, double y);

/// Weights C(k+m-j, m-j)/C(k+m, m) of the (C, k) mean, j = 0..m.
std::vector<double> cesaro_weights(int m, double k);

/// Σ_{j≤m} weight_j · a_j · L_j^α(z) for given coefficients a_0..a_m.
double cesaro_sum(const std::vector<double>& coeffs, Order alpha, double z, double k);

/// σ_m f(x) = Σ_{j≤m} weight_j a_j(y) L_j^α(xy) e^{-xy/2}.  k defaults to α+1
/// and must exceed α + 1/2.
double cesaro_mean(const HalfLineFunction& f, Order alpha, double y, double x, int m, double k);
double cesaro_mean(const HalfLineFunction& f, Order alpha, double y, double x, int m);

enum class SilpVerdict { certified_on_grid, violation_found, inconclusive };

std::string to_string(SilpVerdict v);

struct SilpReport {
  Order alpha{0};
  std::vector<double> y_grid;
  int j_max = 0;
  /// coeffs[j][i] = a_j(y_grid[i]); NaN where quadrature failed.
  std::vector<std::vector<double>> coeffs;
  double min_coeff = 0.0;
  int argmin_j = 0;
  double argmin_y = 0.0;
  int failed_cells = 0;
  double tolerance = 1e-9;
  SilpVerdict verdict = SilpVerdict::inconclusive;
};

/// Coefficient matrix over j = 0..j_max and the y grid, one OpenMP task per cell.
/// violation_found iff min_coeff < -tolerance; inconclusive when some cell failed.
SilpReport silp_check(const HalfLineFunction& f, Order alpha, const std::vector<double>& y_grid, int j_max,
                      double tolerance = 1e-9);
/// Single-threaded reference for silp_check.
SilpReport silp_check_serial(const HalfLineFunction& f, Order alpha, const std::vector<double>& y_grid, int j_max,
                             double tolerance = 1e-9);

/// Default grid {1/8, 1/4, 1/2, 1, 2, 4, 8}.
std::vector<double> default_y_grid();

/// Σ_i w_i omega_kernel(α, x y_i) for atoms (y_i, w_i), y_i > 0, w_i ≥ 0.
HalfLineFunction silp_from_measure(const std::vector<std::pair<double, double>>& masses, Order alpha);

struct SilpBoundResult {
  int n = 0;
  double center_density_bound = 0.0;
  double density_bound = 0.0;
  /// ∫₀^∞ f(x) x^{n/2-1} dx and its error estimate.
  double integral = 0.0;
  double integral_error = 0.0;
  SilpReport certificate;
};

/// Γ(n/2) / (2^n π^{n/2} ∫₀^∞ f(x) x^{n/2-1} dx) for f(0) = 1, f ≤ 0 on [1, ∞)
/// and f (n/2-1)-SILP.  Each hypothesis is checked (sign by 10³ samples plus
/// the envelope, SILP on the default grid) and a failure raises
/// PreconditionError naming it; a non-positive integral raises DegenerateBoundError.
SilpBoundResult silp_bound(const HalfLineFunction& f, int n, double tolerance = 1e-12);

}  // namespace lpsphere
