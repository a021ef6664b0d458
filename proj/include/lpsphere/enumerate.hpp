#pragma once

// Fincke–Pohst enumeration of lattice points in an ellipsoid.
//
// Pruning runs on a floating-point Cholesky factor with a relative safety
// margin; every accepted point is then re-checked with exact integer
// arithmetic on the denominator-cleared Gram matrix, so reported norms and
// counts are exact.  Two counting kernels are provided: an OpenMP version
// that splits the outermost coordinate range across threads and a serial
// reference used by the tests.

#include "lpsphere/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace lpsphere::enumeration {

/// Integer-scaled view of a Gram matrix.  Norms of x + shift (shift in basis
/// coordinates) are reported as integers N with true norm N / scale.
class Problem {
 public:
  /// `shift` may be empty (no shift).
  Problem(const RationalMatrix& gram, std::span<const Rational> shift = {});

  int dimension() const noexcept { return n_; }
  /// Denominator D·d² such that true norm = scaled norm / scale().
  const BigInt& scale() const noexcept { return scale_; }
  /// Largest scaled norm not exceeding `bound`.
  std::int64_t scaled_bound(const Rational& bound) const;

  // Exposed for the kernels.
  int n_ = 0;
  std::vector<std::int64_t> gram_int;  // row-major, Gram · D
  std::vector<std::int64_t> shift_num;  // d · shift (integers), empty if unshifted
  std::int64_t shift_den = 1;           // d
  std::vector<double> shift_real;       // shift as doubles
  std::vector<double> r_diag_sq;        // Cholesky diagonal squared (of the true Gram)
  std::vector<double> mu;               // row-major R_ij / R_ii for j > i
  BigInt scale_;
};

/// Histogram from exact scaled norm to number of points.
using Histogram = std::map<std::int64_t, std::uint64_t>;

struct Budget {
  std::uint64_t max_nodes = 4'000'000'000ULL;
};

/// OpenMP kernel.  Throws ResourceError when the node budget is exhausted.
Histogram count_parallel(const Problem& problem, const Rational& bound, Budget budget = {});

/// Serial reference kernel with identical output.
Histogram count_serial(const Problem& problem, const Rational& bound, Budget budget = {});

/// Calls `visit(coords, scaled_norm)` for every integer vector x with
/// |x + shift|² ≤ bound.  Serial.
void for_each_point(const Problem& problem, const Rational& bound,
                    const std::function<void(std::span<const std::int64_t>, std::int64_t)>& visit,
                    Budget budget = {});

}  // namespace lpsphere::enumeration
