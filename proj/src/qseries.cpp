#include "lpsphere/qseries.hpp"

#include "lpsphere/errors.hpp"

#include <algorithm>

namespace lpsphere {

QSeries::QSeries(int K) {
  if (K < 0) throw PreconditionError("series truncation must be non-negative");
  coeffs_.assign(static_cast<std::size_t>(K) + 1, Rational(0));
}

QSeries::QSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw PreconditionError("series needs at least one coefficient");
}

QSeries QSeries::one(int K) {
  QSeries s(K);
  s[0] = 1;
  return s;
}

QSeries QSeries::truncated(int K) const {
  if (K < 0 || K > trunc()) throw PreconditionError("cannot truncate beyond the known order");
  return QSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + K + 1));
}

bool QSeries::all_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  const int K = std::min(a.trunc(), b.trunc());
  QSeries out(K);
  for (int k = 0; k <= K; ++k) out[k] = a[k] + b[k];
  return out;
}

QSeries operator-(const QSeries& a, const QSeries& b) {
  const int K = std::min(a.trunc(), b.trunc());
  QSeries out(K);
  for (int k = 0; k <= K; ++k) out[k] = a[k] - b[k];
  return out;
}

QSeries operator*(const Rational& s, const QSeries& a) {
  QSeries out(a.trunc());
  for (int k = 0; k <= a.trunc(); ++k) out[k] = s * a[k];
  return out;
}

QSeries series_mul(const QSeries& a, const QSeries& b) {
  const int K = std::min(a.trunc(), b.trunc());
  QSeries out(K);
#pragma omp parallel for schedule(dynamic, 1)
  for (int k = K; k >= 0; --k) {
    Rational sum = 0;
    for (int i = 0; i <= k; ++i) {
      if (a[i] != 0 && b[k - i] != 0) sum += a[i] * b[k - i];
    }
    out[k] = sum;
  }
  return out;
}

QSeries series_mul_serial(const QSeries& a, const QSeries& b) {
  const int K = std::min(a.trunc(), b.trunc());
  QSeries out(K);
  for (int k = 0; k <= K; ++k) {
    for (int i = 0; i <= k; ++i) out[k] += a[i] * b[k - i];
  }
  return out;
}

QSeries series_pow(const QSeries& a, int e) {
  if (e < 0) throw PreconditionError("series_pow: negative exponent");
  QSeries result = QSeries::one(a.trunc());
  QSeries base = a;
  while (e > 0) {
    if (e & 1) result = series_mul(result, base);
    e >>= 1;
    if (e > 0) base = series_mul(base, base);
  }
  return result;
}

BigInt divisor_sigma(int p, int k) {
  if (k < 1) throw PreconditionError("divisor_sigma: k must be positive");
  BigInt sum = 0;
  for (int d = 1; d <= k; ++d) {
    if (k % d == 0) {
      BigInt t;
      mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(p));
      sum += t;
    }
  }
  return sum;
}

QSeries eisenstein_e4(int K) {
  QSeries s = QSeries::one(K);
  for (int k = 1; k <= K; ++k) s[k] = Rational(BigInt(240) * divisor_sigma(3, k));
  return s;
}

QSeries eisenstein_e6(int K) {
  QSeries s = QSeries::one(K);
  for (int k = 1; k <= K; ++k) s[k] = Rational(BigInt(-504) * divisor_sigma(5, k));
  return s;
}

QSeries delta_cusp(int K) {
  // Π (1 - q^n)^24 up to q^{K-1}, then shift by one.
  std::vector<BigInt> p(static_cast<std::size_t>(K) + 1, BigInt(0));
  p[0] = 1;
  for (int n = 1; n < K; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (int k = K - 1; k >= n; --k) p[k] -= p[k - n];
    }
  }
  QSeries s(K);
  for (int k = 1; k <= K; ++k) s[k] = Rational(p[k - 1]);
  return s;
}

QSeries theta_leech(int K) {
  return series_pow(eisenstein_e4(K), 3) - Rational(720) * delta_cusp(K);
}

std::vector<Rational> theta72_weights() {
  return {Rational(79, 1080), Rational(1183, 720), Rational(-91, 180), Rational(-91, 432)};
}

QSeries theta72(int K) {
  const QSeries t8 = eisenstein_e4(K);
  const QSeries t24 = theta_leech(K);
  const QSeries t8_3 = series_pow(t8, 3);
  const QSeries t8_6 = series_mul(t8_3, t8_3);
  const QSeries t8_9 = series_mul(t8_6, t8_3);
  const QSeries t24_2 = series_mul(t24, t24);
  const QSeries t24_3 = series_mul(t24_2, t24);
  const auto w = theta72_weights();
  return w[0] * t24_3 + w[1] * series_mul(t24_2, t8_3) + w[2] * series_mul(t24, t8_6) + w[3] * t8_9;
}

ExtremalityReport extremality(const QSeries& s) {
  ExtremalityReport r;
  r.checked_up_to = s.trunc();
  r.integral = s.all_integral();
  for (int k = 0; k <= s.trunc(); ++k) {
    if (k > 0 && r.min_norm == 0 && s[k] != 0) r.min_norm = 2 * k;
    if (s[k] < 0) r.negative_coeffs.emplace_back(k, s[k]);
  }
  return r;
}

}  // namespace lpsphere
