#include "lpsphere/rational.hpp"

#include "lpsphere/errors.hpp"

#include <utility>

namespace lpsphere {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw PreconditionError("empty rational literal");
  Rational q;
  if (q.set_str(s, 10) != 0) throw PreconditionError("malformed rational literal: '" + s + "'");
  if (q.get_den() == 0) throw PreconditionError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str(10);
}

std::string to_string(const BigInt& value) { return value.get_str(10); }

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool RationalMatrix::is_symmetric() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool RationalMatrix::is_integral() const {
  for (const auto& x : data_)
    if (x.get_den() != 1) return false;
  return true;
}

std::vector<Rational> RationalMatrix::ldl_pivots() const {
  // Symmetric elimination without pivoting: pivot k is the k-th leading
  // principal minor ratio, so all pivots > 0 iff positive definite.
  RationalMatrix a = *this;
  std::vector<Rational> pivots;
  pivots.reserve(n_);
  for (int k = 0; k < n_; ++k) {
    const Rational p = a(k, k);
    if (p == 0) return {};
    pivots.push_back(p);
    for (int i = k + 1; i < n_; ++i) {
      if (a(i, k) == 0) continue;
      const Rational factor = a(i, k) / p;
      for (int j = k + 1; j < n_; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  return pivots;
}

bool RationalMatrix::is_positive_definite() const {
  if (!is_symmetric()) return false;
  const auto pivots = ldl_pivots();
  if (static_cast<int>(pivots.size()) != n_) return false;
  for (const auto& p : pivots)
    if (p <= 0) return false;
  return true;
}

Rational RationalMatrix::determinant() const {
  RationalMatrix a = *this;
  Rational det = 1;
  for (int k = 0; k < n_; ++k) {
    int piv = k;
    while (piv < n_ && a(piv, k) == 0) ++piv;
    if (piv == n_) return 0;
    if (piv != k) {
      for (int j = 0; j < n_; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    for (int i = k + 1; i < n_; ++i) {
      if (a(i, k) == 0) continue;
      const Rational factor = a(i, k) / a(k, k);
      for (int j = k; j < n_; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  return det;
}

RationalMatrix RationalMatrix::inverse() const {
  RationalMatrix a = *this;
  RationalMatrix inv = identity(n_);
  for (int k = 0; k < n_; ++k) {
    int piv = k;
    while (piv < n_ && a(piv, k) == 0) ++piv;
    if (piv == n_) throw PreconditionError("matrix is singular");
    if (piv != k) {
      for (int j = 0; j < n_; ++j) {
        std::swap(a(k, j), a(piv, j));
        std::swap(inv(k, j), inv(piv, j));
      }
    }
    const Rational p = a(k, k);
    for (int j = 0; j < n_; ++j) {
      a(k, j) /= p;
      inv(k, j) /= p;
    }
    for (int i = 0; i < n_; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const Rational factor = a(i, k);
      for (int j = 0; j < n_; ++j) {
        a(i, j) -= factor * a(k, j);
        inv(i, j) -= factor * inv(k, j);
      }
    }
  }
  return inv;
}

RationalMatrix RationalMatrix::scaled(const Rational& s) const {
  RationalMatrix out = *this;
  for (auto& x : out.data_) x *= s;
  return out;
}

RationalMatrix RationalMatrix::congruent(const RationalMatrix& u) const {
  RationalMatrix tmp(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      Rational s = 0;
      for (int k = 0; k < n_; ++k) s += (*this)(i, k) * u(k, j);
      tmp(i, j) = s;
    }
  RationalMatrix out(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      Rational s = 0;
      for (int k = 0; k < n_; ++k) s += u(k, i) * tmp(k, j);
      out(i, j) = s;
    }
  return out;
}

BigInt RationalMatrix::common_denominator() const {
  BigInt l = 1;
  for (const auto& x : data_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

}  // namespace lpsphere
