#pragma once

// Radial functions on R^n, their numeric Fourier transform, and the concrete
// test families: Gaussians, ball indicators, band-limited autocorrelations of
// ball indicators, and the Bessel function J_{n/2}(j r)² / ((1 - r²) r^n).

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace lpsphere {

/// |f(r)| ≤ C (1 + r)^{-n-eps} for r ≥ from.  `heuristic` marks constants
/// fitted on a grid rather than proved.
struct Decay {
  double C = 1.0;
  double eps = 1.0;
  bool heuristic = true;
  double from = 0.0;
};

/// A radial function f: R^n -> R viewed as a profile r ↦ f(r) on [0, ∞).
/// Immutable after construction and cheap to copy.
class RadialFunction {
 public:
  using Profile = std::function<double(double)>;

  RadialFunction(int dimension, Profile profile, Decay decay, std::optional<double> band_limit = std::nullopt,
                 std::string name = {});

  double operator()(double r) const { return state_->profile(r); }
  int dimension() const noexcept { return state_->dimension; }
  const Decay& decay() const noexcept { return state_->decay; }
  /// ρ with supp(f̂) ⊆ B_ρ(0), when known.
  std::optional<double> band_limit() const noexcept { return state_->band_limit; }
  /// Radius beyond which f vanishes identically, when known.
  std::optional<double> support() const noexcept { return state_->support; }
  const std::string& name() const noexcept { return state_->name; }

  /// Closed-form transform, when the family provides one.
  const std::optional<Profile>& exact_transform() const noexcept { return state_->transform; }
  /// Decay of the closed-form transform (valid only when exact_transform() is set).
  const Decay& transform_decay() const noexcept { return state_->transform_decay; }
  /// True when r ↦ |f(r)| is non-increasing, so f itself bounds lattice tails.
  bool monotone() const noexcept { return state_->monotone; }
  bool transform_monotone() const noexcept { return state_->transform_monotone; }
  /// Radius beyond which the transform vanishes, when known.
  std::optional<double> transform_support() const noexcept { return state_->transform_support; }

  /// C (1 + r)^{-n-eps}; meaningful for r ≥ decay().from.
  double envelope(double r) const;

  RadialFunction with_transform(Profile transform, Decay transform_decay,
                                std::optional<double> transform_support = std::nullopt) const;
  RadialFunction with_support(double radius) const;
  RadialFunction with_monotone(bool profile, bool transform) const;

 private:
  struct State {
    int dimension;
    Profile profile;
    Decay decay;
    std::optional<double> band_limit;
    std::optional<double> support;
    std::optional<Profile> transform;
    Decay transform_decay;
    std::optional<double> transform_support;
    bool monotone = false;
    bool transform_monotone = false;
    std::string name;
  };
  explicit RadialFunction(std::shared_ptr<const State> s) : state_(std::move(s)) {}
  std::shared_ptr<const State> state_;
};

struct TransformResult {
  double radius = 0.0;
  double value = 0.0;
  double est_error = 0.0;
  /// True when the tail was handled by windowed Richardson extrapolation
  /// instead of the analytic decay bound; est_error is then empirical.
  bool extrapolated = false;
};

struct TransformOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  /// Largest truncation radius for the plain (bounded-tail) path.
  double plain_radius_limit = 1.2e4;
  /// Largest radius used by the windowed extrapolation path.
  double max_radius = 1.6e4;
};

/// f̂(t) = ∫_{R^n} f(x) e^{2πi⟨t,x⟩} dx = (2π)^{n/2} ∫₀^∞ f(s) s^{n-1} J_ν(2πts)/(2πts)^ν ds,
/// ν = n/2 - 1.  Throws AccuracyError (carrying the partial value) when the
/// error estimate exceeds max(abs_tol, rel_tol |f̂(t)|).
TransformResult radial_ft(const RadialFunction& f, double t, const TransformOptions& options = {});

/// Fit C for a given eps as 1.1 · max |f(r)| (1 + r)^{n+eps} on a grid over [from, r_max].
Decay fit_decay(const RadialFunction::Profile& profile, int n, double eps, double r_max = 2000.0, double from = 0.0);

/// e^{-π s r²}; transform s^{-n/2} e^{-π t²/s}.
RadialFunction gaussian(int n, double s = 1.0);

/// Indicator of the ball of radius R (compact support, transform ball_ft).
RadialFunction ball_indicator(int n, double R);

/// Volume of B_R(0) ∩ B_R(d e₁).
double ball_intersection_volume(int n, double R, double d);

/// f = (χ̂_{r/2})², so f̂ = χ_{r/2} * χ_{r/2} has support in B_r and f ≥ 0.
RadialFunction autocorr_fn(int n, double r);

/// Square of autocorr_fn(n, r/2): band limit r, f ≥ 0, f̂ ≥ 0, and samples
/// decaying like r^{-2n-2}.  No closed-form transform.
RadialFunction autocorr_squared_fn(int n, double r);

/// J_{n/2}(j r)² / ((1 - r²) r^n) with j = j_{n/2} the first zero of J_{n/2};
/// band limit j/π.
RadialFunction levensh_fn(int n);

/// The first positive zero of J_{n/2}.
double levensh_root(int n);

}  // namespace lpsphere
