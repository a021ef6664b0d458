#pragma once

// Shared numerical plumbing: compensated summation, Gauss rules, adaptive
// panel integration and Richardson extrapolation of smoothed truncations.

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace lpsphere::numerics {

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss–Legendre rule on [-1, 1].  Rules are cached per n.
const GaussRule& gauss_legendre(int n);

/// n-point generalized Gauss–Laguerre rule for the weight x^alpha e^{-x} on
/// [0, inf), alpha > -1, via the Golub–Welsch eigenproblem.  Cached per (n, alpha).
const GaussRule& gauss_laguerre(int n, double alpha);

/// Integrate f over [a, b] with a fixed Gauss–Legendre rule.
double gauss_legendre_panel(const std::function<double(double)>& f, double a, double b, int order = 20);

struct IntegralResult {
  double value = 0.0;
  double est_error = 0.0;
  bool converged = true;
};

/// Adaptive panel Gauss–Legendre: compares a 20-point with two 10-point
/// halves and bisects until the difference is below max(abs_tol, rel_tol*|I|).
IntegralResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, double rel_tol = 1e-13, int max_depth = 30);

/// Integrate f over [a, inf) for an integrand with at most algebraic growth
/// times exp(-x) decay (used for tail bounds).  Maps panels of doubling width
/// until the panel contribution is negligible.
IntegralResult integrate_to_infinity(const std::function<double(double)>& f, double a, double abs_tol);

/// C-infinity cutoff: 1 on [0, 1/2], 0 on [1, inf), smooth in between.
double smooth_window(double u) noexcept;

/// Richardson extrapolation of values I(S0 * 2^k), k = 0..K-1, assuming an
/// error expansion in integer powers of 1/S.  Returns the most extrapolated
/// value; `est_error` receives the difference of the two best estimates.
double richardson_inverse_powers(std::span<const double> values, double* est_error);

}  // namespace lpsphere::numerics
