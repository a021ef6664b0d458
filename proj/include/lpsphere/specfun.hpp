#pragma once

// Special-function kernel: Γ, Bessel J of integer and half-integer order,
// Bessel zeros, Laguerre polynomials, and the two radial kernels
//   omega_kernel(α, x) = x^{-α/2} J_α(2√x)
//   ball_ft(n, R, x)   = J_{n/2}(2πR x) (R/x)^{n/2}

#include <compare>
#include <vector>

namespace lpsphere {

/// Bessel/Laguerre order restricted to half-integers ν ≥ -1/2.  Stored as 2ν
/// so that ν = n/2 - 1 is exact for every integer dimension n.
class Order {
 public:
  /// Throws DomainError when twice_nu < -1.
  explicit Order(int twice_nu);

  static Order integer(int nu) { return Order(2 * nu); }
  /// ν = n/2.
  static Order half_of(int n) { return Order(n); }
  /// ν = n/2 - 1, the order attached to dimension n.
  static Order of_dimension(int n) { return Order(n - 2); }
  /// Accepts only half-integers; throws DomainError otherwise.
  static Order from_value(double nu);

  int twice() const noexcept { return twice_nu_; }
  double value() const noexcept { return 0.5 * twice_nu_; }
  bool is_integer() const noexcept { return twice_nu_ % 2 == 0; }

  Order shifted(int by) const { return Order(twice_nu_ + 2 * by); }

  auto operator<=>(const Order&) const = default;

 private:
  int twice_nu_;
};

/// Γ(x) for x > 0; DomainError otherwise.
double gamma(double x);

/// J_ν(x) for x ≥ 0.  ν = -1/2 at x = 0 is singular and raises DomainError.
double bessel_j(Order order, double x);

/// J_ν(x) / x^ν, continuous at x = 0 with value 1 / (2^ν Γ(ν+1)).
double bessel_j_scaled(Order order, double x);

/// d/dx J_ν(x) = (ν/x) J_ν(x) - J_{ν+1}(x).
double bessel_j_derivative(Order order, double x);

/// Positive zeros λ_1 < λ_2 < ... of J_ν.
struct RootTable {
  Order order;
  std::vector<double> roots;
};

/// The m-th positive zero of J_ν (m ≥ 1).  Zeros are cached per order in a
/// write-once table; concurrent callers are safe.
double bessel_root(Order order, int m);

/// The first `count` zeros of J_ν.
RootTable bessel_roots(Order order, int count);

/// L_k^α(x) by the three-term recurrence, α > -1.
double laguerre(int k, double alpha, double x);
inline double laguerre(int k, Order alpha, double x) { return laguerre(k, alpha.value(), x); }

/// Σ_{i≤k} C(k+α, k-i) x^i / i!, which dominates |L_k^α(x)| for x ≥ 0 (= L_k^α(-x)).
double laguerre_majorant(int k, double alpha, double x);

/// x^{-α/2} J_α(2√x), the Bessel kernel of scale-invariant Laguerre positivity.
double omega_kernel(Order alpha, double x);

/// Radial Fourier transform of the indicator of the ball of radius R in R^n.
double ball_ft(int n, double R, double x);

/// Volume of the n-ball of radius R.
double ball_volume(int n, double R);

}  // namespace lpsphere
