#include "lpsphere/enumerate.hpp"

#include "lpsphere/errors.hpp"

#include <omp.h>

#include <cmath>
#include <limits>
#include <string>

namespace lpsphere::enumeration {

namespace {

constexpr double kRelativeMargin = 1e-9;

std::int64_t to_int64(const BigInt& v, const char* what) {
  if (!v.fits_slong_p()) throw ResourceError(std::string("enumeration: ") + what + " exceeds 64-bit range", "none");
  return v.get_si();
}

}  // namespace

Problem::Problem(const RationalMatrix& gram, std::span<const Rational> shift) : n_(gram.size()) {
  if (!shift.empty() && static_cast<int>(shift.size()) != n_) throw PreconditionError("shift has wrong dimension");
  const BigInt den = gram.common_denominator();
  BigInt d = 1;
  for (const auto& c : shift) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
  scale_ = den * d * d;
  shift_den = to_int64(d, "shift denominator");

  gram_int.resize(static_cast<std::size_t>(n_) * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      const Rational scaled = gram(i, j) * Rational(den);
      gram_int[static_cast<std::size_t>(i) * n_ + j] = to_int64(scaled.get_num(), "Gram entry");
    }
  if (!shift.empty()) {
    for (const auto& c : shift) {
      const Rational scaled = c * Rational(d);
      shift_num.push_back(to_int64(scaled.get_num(), "shift"));
      shift_real.push_back(c.get_d());
    }
  } else {
    shift_real.assign(n_, 0.0);
  }

  // Upper Cholesky factor R of the true Gram: G = Rᵀ R, in double.
  std::vector<double> g(static_cast<std::size_t>(n_) * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) g[static_cast<std::size_t>(i) * n_ + j] = gram(i, j).get_d();
  std::vector<double> r(static_cast<std::size_t>(n_) * n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    double s = g[static_cast<std::size_t>(i) * n_ + i];
    for (int k = 0; k < i; ++k) s -= r[static_cast<std::size_t>(k) * n_ + i] * r[static_cast<std::size_t>(k) * n_ + i];
    if (!(s > 0.0)) throw PreconditionError("Gram matrix is not numerically positive definite");
    const double rii = std::sqrt(s);
    r[static_cast<std::size_t>(i) * n_ + i] = rii;
    for (int j = i + 1; j < n_; ++j) {
      double t = g[static_cast<std::size_t>(i) * n_ + j];
      for (int k = 0; k < i; ++k) t -= r[static_cast<std::size_t>(k) * n_ + i] * r[static_cast<std::size_t>(k) * n_ + j];
      r[static_cast<std::size_t>(i) * n_ + j] = t / rii;
    }
  }
  r_diag_sq.resize(n_);
  mu.assign(static_cast<std::size_t>(n_) * n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    const double rii = r[static_cast<std::size_t>(i) * n_ + i];
    r_diag_sq[i] = rii * rii;
    for (int j = i + 1; j < n_; ++j) mu[static_cast<std::size_t>(i) * n_ + j] = r[static_cast<std::size_t>(i) * n_ + j] / rii;
  }
}

std::int64_t Problem::scaled_bound(const Rational& bound) const {
  if (bound < 0) return -1;
  const Rational scaled = bound * Rational(scale_);
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  if (!fl.fits_slong_p() || fl > BigInt(std::numeric_limits<std::int64_t>::max() / 4))
    throw ResourceError("enumeration: norm bound too large for exact 64-bit arithmetic", "none");
  return fl.get_si();
}

namespace {

// Depth-first walker.  Level i fixes coordinate i given coordinates i+1..n-1.
// State per level: float partial norm, exact partial norm, exact column sums.
class Walker {
 public:
  Walker(const Problem& p, std::int64_t bound_scaled, double bound_real, std::uint64_t max_nodes)
      : p_(p),
        n_(p.n_),
        bound_scaled_(bound_scaled),
        bound_real_(bound_real * (1.0 + kRelativeMargin) + 1e-12),
        max_nodes_(max_nodes),
        x_(n_, 0),
        w_(n_, 0),
        yreal_(n_, 0.0),
        partial_(n_ + 1, 0.0),
        exact_(n_ + 1, 0),
        colsum_(static_cast<std::size_t>(n_ + 1) * n_, 0) {}

  // Integer range of coordinate i given the fixed tail.
  bool range(int i, std::int64_t& lo, std::int64_t& hi) {
    double t = 0.0;
    for (int j = i + 1; j < n_; ++j) t += p_.mu[static_cast<std::size_t>(i) * n_ + j] * yreal_[j];
    const double rem = bound_real_ - partial_[i + 1];
    if (rem < 0.0) return false;
    const double width = std::sqrt(rem / p_.r_diag_sq[i]);
    const double c = -t - p_.shift_real[i];
    lo = static_cast<std::int64_t>(std::ceil(c - width - 1e-9));
    hi = static_cast<std::int64_t>(std::floor(c + width + 1e-9));
    center_ = c;
    tcache_ = t;
    return lo <= hi;
  }

  // Fix coordinate i to value v; updates exact and float partials.
  void fix(int i, std::int64_t v, double t) {
    x_[i] = v;
    const std::int64_t w = p_.shift_num.empty() ? v : p_.shift_den * v + p_.shift_num[i];
    w_[i] = w;
    yreal_[i] = static_cast<double>(v) + p_.shift_real[i];
    const double z = yreal_[i] + t;
    partial_[i] = partial_[i + 1] + p_.r_diag_sq[i] * z * z;
    const std::int64_t* gi = &p_.gram_int[static_cast<std::size_t>(i) * n_];
    const std::int64_t* above = &colsum_[static_cast<std::size_t>(i + 1) * n_];
    exact_[i] = exact_[i + 1] + w * (gi[i] * w + 2 * above[i]);
    std::int64_t* here = &colsum_[static_cast<std::size_t>(i) * n_];
    for (int k = 0; k < i; ++k) here[k] = above[k] + gi[k] * w;
  }

  template <class Leaf>
  void walk(int i, Leaf&& leaf) {
    std::int64_t lo;
    std::int64_t hi;
    if (!range(i, lo, hi)) return;
    const double t = tcache_;
    if (i == 0) {
      nodes_ += static_cast<std::uint64_t>(hi - lo + 1);
      if (nodes_ > max_nodes_) throw ResourceError("enumeration node budget exhausted", "none");
      const std::int64_t g00 = p_.gram_int[0];
      const std::int64_t s0 = colsum_[n_ + 0];
      for (std::int64_t v = lo; v <= hi; ++v) {
        const std::int64_t w = p_.shift_num.empty() ? v : p_.shift_den * v + p_.shift_num[0];
        const std::int64_t e = exact_[1] + w * (g00 * w + 2 * s0);
        if (e <= bound_scaled_) {
          x_[0] = v;
          leaf(e);
        }
      }
      return;
    }
    if (++nodes_ > max_nodes_) throw ResourceError("enumeration node budget exhausted", "none");
    for (std::int64_t v = lo; v <= hi; ++v) {
      fix(i, v, t);
      walk(i - 1, leaf);
    }
  }

  // Runs the subtree where the outermost coordinate equals v.
  template <class Leaf>
  void walk_top(std::int64_t v, double t, Leaf&& leaf) {
    fix(n_ - 1, v, t);
    if (n_ == 1) {
      if (exact_[0] <= bound_scaled_) leaf(exact_[0]);
      return;
    }
    walk(n_ - 2, leaf);
  }

  bool top_range(std::int64_t& lo, std::int64_t& hi, double& t) {
    const bool ok = range(n_ - 1, lo, hi);
    t = tcache_;
    return ok;
  }

  const std::vector<std::int64_t>& coords() const { return x_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  const Problem& p_;
  int n_;
  std::int64_t bound_scaled_;
  double bound_real_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  std::vector<std::int64_t> x_;
  std::vector<std::int64_t> w_;
  std::vector<double> yreal_;
  std::vector<double> partial_;
  std::vector<std::int64_t> exact_;
  std::vector<std::int64_t> colsum_;
  double center_ = 0.0;
  double tcache_ = 0.0;
};

void check_bound(const Problem& p, const Rational& bound) {
  if (p.n_ < 1) throw PreconditionError("enumeration: empty lattice");
  if (bound < 0) throw PreconditionError("enumeration: negative bound");
  (void)p.scaled_bound(bound);
}

}  // namespace

Histogram count_serial(const Problem& problem, const Rational& bound, Budget budget) {
  check_bound(problem, bound);
  Histogram hist;
  Walker walker(problem, problem.scaled_bound(bound), bound.get_d(), budget.max_nodes);
  std::int64_t lo;
  std::int64_t hi;
  double t;
  if (!walker.top_range(lo, hi, t)) return hist;
  for (std::int64_t v = lo; v <= hi; ++v) walker.walk_top(v, t, [&](std::int64_t e) { ++hist[e]; });
  return hist;
}

Histogram count_parallel(const Problem& problem, const Rational& bound, Budget budget) {
  check_bound(problem, bound);
  const std::int64_t bound_scaled = problem.scaled_bound(bound);
  const double bound_real = bound.get_d();
  std::int64_t lo;
  std::int64_t hi;
  double t;
  {
    Walker probe(problem, bound_scaled, bound_real, budget.max_nodes);
    if (!probe.top_range(lo, hi, t)) return {};
  }
  const std::int64_t count = hi - lo + 1;
  // Dense local histograms when the scaled bound is small, sparse otherwise.
  const bool dense = bound_scaled < (1 << 22);
  std::vector<Histogram> sparse_parts;
  std::vector<std::vector<std::uint64_t>> dense_parts;
  bool exhausted = false;
#pragma omp parallel
  {
#pragma omp single
    {
      const int threads = omp_get_num_threads();
      if (dense) {
        dense_parts.assign(threads, {});
      } else {
        sparse_parts.assign(threads, {});
      }
    }
    const int tid = omp_get_thread_num();
    std::vector<std::uint64_t> local_dense;
    Histogram local_sparse;
    if (dense) local_dense.assign(static_cast<std::size_t>(bound_scaled) + 1, 0);
    const std::uint64_t per_thread_budget = budget.max_nodes;
    Walker walker(problem, bound_scaled, bound_real, per_thread_budget);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t k = 0; k < count; ++k) {
      if (exhausted) continue;
      try {
        if (dense) {
          walker.walk_top(lo + k, t, [&](std::int64_t e) { ++local_dense[static_cast<std::size_t>(e)]; });
        } else {
          walker.walk_top(lo + k, t, [&](std::int64_t e) { ++local_sparse[e]; });
        }
      } catch (const ResourceError&) {
#pragma omp atomic write
        exhausted = true;
      }
    }
    if (dense) {
      dense_parts[tid] = std::move(local_dense);
    } else {
      sparse_parts[tid] = std::move(local_sparse);
    }
  }
  if (exhausted) throw ResourceError("enumeration node budget exhausted", "none");
  Histogram hist;
  if (dense) {
    std::vector<std::uint64_t> total(static_cast<std::size_t>(bound_scaled) + 1, 0);
    for (const auto& part : dense_parts)
      for (std::size_t e = 0; e < part.size(); ++e) total[e] += part[e];
    for (std::size_t e = 0; e < total.size(); ++e)
      if (total[e]) hist[static_cast<std::int64_t>(e)] = total[e];
  } else {
    for (const auto& part : sparse_parts)
      for (const auto& [e, c] : part) hist[e] += c;
  }
  return hist;
}

void for_each_point(const Problem& problem, const Rational& bound,
                    const std::function<void(std::span<const std::int64_t>, std::int64_t)>& visit, Budget budget) {
  check_bound(problem, bound);
  Walker walker(problem, problem.scaled_bound(bound), bound.get_d(), budget.max_nodes);
  std::int64_t lo;
  std::int64_t hi;
  double t;
  if (!walker.top_range(lo, hi, t)) return;
  for (std::int64_t v = lo; v <= hi; ++v)
    walker.walk_top(v, t, [&](std::int64_t e) { visit(walker.coords(), e); });
}

}  // namespace lpsphere::enumeration
