#pragma once

// Lattices given by exact Gram matrices: shells, theta sums with certified
// tails, duality, Poisson and theta-transform residuals, center density and
// the lattice feasibility check for the dual linear program.

#include "lpsphere/enumerate.hpp"
#include "lpsphere/radial.hpp"
#include "lpsphere/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace lpsphere {

class Lattice {
 public:
  /// Validates symmetry and positive definiteness (exact LDLᵀ); throws
  /// PreconditionError otherwise.
  Lattice(std::string name, RationalMatrix gram);

  int dimension() const noexcept { return gram_.size(); }
  const RationalMatrix& gram() const noexcept { return gram_; }
  const std::string& name() const noexcept { return name_; }

  Rational determinant() const { return gram_.determinant(); }
  /// vol(R^n / Λ) = √det.
  double covolume() const;
  bool is_integral() const { return gram_.is_integral(); }
  /// Integral with even diagonal.
  bool is_even() const;
  bool is_unimodular() const { return is_integral() && determinant() == 1; }

  /// Gram scaled by s (vectors scaled by √s).
  Lattice scaled(const Rational& s) const;
  /// Gram⁻¹, the Gram of the dual basis.
  Lattice dual() const;
  /// Same lattice in the basis given by the columns of U (det U = ±1).
  Lattice rebased(const RationalMatrix& u) const;

  /// Smallest non-zero norm (cached after the first call).
  Rational min_norm() const;

 private:
  struct Cache;
  std::string name_;
  RationalMatrix gram_;
  std::shared_ptr<Cache> cache_;
};

/// Z1..Z8, D4, E8, Leech (names are case-insensitive: "z3", "d4", "e8", "leech").
Lattice builtin(std::string_view name);
std::vector<std::string> builtin_names();

/// {"name": ..., "n": ..., "gram": [["p/q", ...], ...]}.  Throws PreconditionError.
Lattice lattice_from_json(std::string_view text);
std::string lattice_to_json(const Lattice& lattice);

/// Vector counts per norm, exact, for all norms ≤ complete_up_to.
struct ShellMap {
  std::map<Rational, BigInt> entries;
  Rational complete_up_to;
};

/// Fincke–Pohst enumeration.  Throws ResourceError when the node budget runs out.
ShellMap shells(const Lattice& lattice, const Rational& up_to, enumeration::Budget budget = {});

/// Exact shells from the cheapest available source: orthogonal blocks of the
/// Gram are handled separately and convolved; even unimodular blocks use the
/// modular-form expansion fixed by their first enumerated shells; all other
/// blocks are enumerated.
ShellMap theta_shells(const Lattice& lattice, const Rational& up_to);

/// A truncated lattice sum together with a rigorous bound on the omitted terms.
struct LatticeSum {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// Bound on Σ_{|v|² > N} G(|v|) over points of a (possibly shifted) lattice
/// with minimal norm m, for G non-negative and decreasing on [√N, ∞).  Uses
/// the packing count #{|v| ≤ u} ≤ ((u + ρ)/ρ)^n with ρ = √m / 2.
double shell_tail_bound(int n, double min_norm, double N, const std::function<double(double)>& G);
/// Same bound for G(u) = C (1 + u)^{-n-eps}, in closed form.
double shell_tail_bound_algebraic(int n, double min_norm, double N, double C, double eps);

/// T(y) = Σ_v e^{-|v|² y} from the given shells.  Throws AccuracyError when the
/// tail bound exceeds tol.
LatticeSum theta_T(const Lattice& lattice, double y, const ShellMap& shells, double tol = 1e-12);
/// Picks the truncation automatically.
LatticeSum theta_T(const Lattice& lattice, double y, double tol = 1e-12);

/// |T_{Λ*}(y)/(2^n covol) - (4π)^{-n/2} (π²/y)^{n/2} T_Λ(π²/y)|.
double theta_transform_check(const Lattice& lattice, double y, double tol = 1e-13);

/// Both sides of Poisson summation for f and a shift v (basis coordinates).
struct PoissonResult {
  LatticeSum lhs;
  LatticeSum rhs;
  double residual = 0.0;
};

/// Σ_x f(|x + v|) against (1/covol) Σ_{t∈Λ*} cos(2π⟨v, t⟩) f̂(|t|).  Requires a
/// closed-form transform with decay metadata.
PoissonResult poisson_check(const Lattice& lattice, const RadialFunction& f, const std::vector<Rational>& v,
                            double tol = 1e-12);

/// Entry k: Σ_v L_k^{n/2-1}(|v|² y) e^{-|v|² y}, k = 0..k_max.
std::vector<LatticeSum> laguerre_positivity_check(const Lattice& lattice, int k_max, double y, double tol = 1e-12);

struct CenterDensity {
  double algebraic = 0.0;
  /// (min_norm/4)^{n/2}/√det when it is rational (even n).
  std::optional<Rational> algebraic_exact;
  double limit = 0.0;
  double limit_error = 0.0;
};

/// Algebraic value and the small-y limit of (4π)^{-n/2} y^{n/2} T(y) for the
/// lattice rescaled to minimal norm 1.
CenterDensity center_density(const Lattice& lattice);

struct DualFeasibilityReport {
  /// 1 / covolume.
  double c = 0.0;
  Rational min_norm;
  /// min over tests of Σ_{t∈Λ*, t≠0} φ(t)/covol; a certified lower bound
  /// because the omitted terms are non-negative.
  double margin = 0.0;
  std::vector<std::string> tests;
  std::vector<double> slacks;
  /// Norm up to which dual vectors were summed.
  double dual_norm_bound = 0.0;
};

/// The lattice as a feasible point of the dual program: g = Σ_{x∈Λ} δ_x.
/// Requires min norm ≥ 1 and tests that are non-negative.
DualFeasibilityReport dual_feasibility(const Lattice& lattice, const std::vector<RadialFunction>& tests,
                                       double dual_norm_bound = 0.0);

}  // namespace lpsphere
