#pragma once

// Exact truncated power series in q with rational coefficients.  Theta series
// of even lattices use the convention that the coefficient of q^k counts
// vectors of norm 2k.

#include "lpsphere/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace lpsphere {

class QSeries {
 public:
  /// The zero series truncated at order K (coefficients 0..K).
  explicit QSeries(int K = 0);
  /// Takes coefficients 0..K; K = coeffs.size() - 1.
  explicit QSeries(std::vector<Rational> coeffs);

  static QSeries one(int K);

  int trunc() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  Rational& operator[](int k) { return coeffs_.at(static_cast<std::size_t>(k)); }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  /// Drops coefficients above K (K ≤ trunc()).
  QSeries truncated(int K) const;
  bool all_integral() const;

  friend bool operator==(const QSeries&, const QSeries&) = default;

 private:
  std::vector<Rational> coeffs_;
};

QSeries operator+(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a, const QSeries& b);
QSeries operator*(const Rational& s, const QSeries& a);

/// Cauchy product truncated at min(a.trunc(), b.trunc()); output coefficients
/// are computed in parallel.
QSeries series_mul(const QSeries& a, const QSeries& b);
/// Serial reference for series_mul.
QSeries series_mul_serial(const QSeries& a, const QSeries& b);
/// a^e by repeated squaring (e ≥ 0).
QSeries series_pow(const QSeries& a, int e);

/// σ_p(k) = Σ_{d | k} d^p.
BigInt divisor_sigma(int p, int k);

/// 1 + 240 Σ σ₃(k) q^k, the theta series of E8.
QSeries eisenstein_e4(int K);
/// 1 - 504 Σ σ₅(k) q^k.
QSeries eisenstein_e6(int K);
/// q Π_{n≥1} (1 - q^n)^24.
QSeries delta_cusp(int K);
/// E4³ - 720 Δ, the theta series of the Leech lattice.
QSeries theta_leech(int K);
/// The weight-36 combination of Leech and E8 theta series whose first three
/// non-constant coefficients vanish.
QSeries theta72(int K);

/// The four rational weights of theta72, in the order of the terms
/// Θ24³, Θ24²Θ8³, Θ24Θ8⁶, Θ8⁹.
std::vector<Rational> theta72_weights();

struct ExtremalityReport {
  /// 2·(first k > 0 with nonzero coefficient); 0 if none up to checked_up_to.
  int min_norm = 0;
  std::vector<std::pair<int, Rational>> negative_coeffs;
  int checked_up_to = 0;
  bool integral = true;
};

ExtremalityReport extremality(const QSeries& s);

}  // namespace lpsphere
