#pragma once

// Exact arithmetic: GMP-backed big integers and rationals, plus a small dense
// rational matrix used for Gram matrices.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lpsphere {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q" (whitespace-free).  Throws PreconditionError.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form, or "p" for integers.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n) {}
  static RationalMatrix identity(int n);

  int size() const noexcept { return n_; }
  Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  const Rational& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }

  bool is_symmetric() const;
  bool is_integral() const;

  /// Exact LDLᵀ pivots (diagonal of D).  Empty result if a zero pivot occurs.
  std::vector<Rational> ldl_pivots() const;
  bool is_positive_definite() const;
  Rational determinant() const;
  /// Exact inverse by Gauss–Jordan; throws PreconditionError if singular.
  RationalMatrix inverse() const;

  RationalMatrix scaled(const Rational& s) const;
  /// Uᵀ · this · U for an integer (or rational) change of basis U.
  RationalMatrix congruent(const RationalMatrix& u) const;

  /// Least common multiple of all entry denominators.
  BigInt common_denominator() const;

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) { return a.n_ == b.n_ && a.data_ == b.data_; }

 private:
  int n_ = 0;
  std::vector<Rational> data_;
};

}  // namespace lpsphere
