#include "lpsphere/numerics.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace lpsphere::numerics {

namespace {

GaussRule make_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

GaussRule make_gauss_laguerre(int n, double alpha) {
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
  for (int i = 0; i < n; ++i) diag[i] = 2.0 * i + alpha + 1.0;
  for (int i = 1; i < n; ++i) sub[i - 1] = std::sqrt(i * (i + alpha));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Golub-Welsch eigensolver failed");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mu0 = std::tgamma(alpha + 1.0);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()[i];
    const double v = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v * v;
  }
  return rule;
}

std::mutex g_rule_mutex;

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(g_rule_mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
  return it->second;
}

const GaussRule& gauss_laguerre(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre: n must be positive");
  if (!(alpha > -1.0)) throw std::invalid_argument("gauss_laguerre: alpha must exceed -1");
  static std::map<std::pair<int, double>, GaussRule> cache;
  std::lock_guard lock(g_rule_mutex);
  const auto key = std::make_pair(n, alpha);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make_gauss_laguerre(n, alpha)).first;
  return it->second;
}

double gauss_legendre_panel(const std::function<double(double)>& f, double a, double b, int order) {
  const GaussRule& rule = gauss_legendre(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  CompensatedSum sum;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum.value();
}

namespace {

void adaptive_step(const std::function<double(double)>& f, double a, double b, double whole, double tol, int depth,
                   CompensatedSum& sum, CompensatedSum& err, bool& converged) {
  const double mid = 0.5 * (a + b);
  const double left = gauss_legendre_panel(f, a, mid, 10);
  const double right = gauss_legendre_panel(f, mid, b, 10);
  const double diff = std::abs(left + right - whole);
  if (diff <= tol || depth == 0) {
    if (diff > tol) converged = false;
    sum += left + right;
    err += diff;
    return;
  }
  adaptive_step(f, a, mid, gauss_legendre_panel(f, a, mid, 20), 0.5 * tol, depth - 1, sum, err, converged);
  adaptive_step(f, mid, b, gauss_legendre_panel(f, mid, b, 20), 0.5 * tol, depth - 1, sum, err, converged);
}

}  // namespace

IntegralResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                  double rel_tol, int max_depth) {
  IntegralResult out;
  if (a == b) return out;
  const double whole = gauss_legendre_panel(f, a, b, 20);
  const double tol = std::max(abs_tol, rel_tol * std::abs(whole));
  CompensatedSum sum;
  CompensatedSum err;
  adaptive_step(f, a, b, whole, tol, max_depth, sum, err, out.converged);
  out.value = sum.value();
  out.est_error = err.value();
  return out;
}

IntegralResult integrate_to_infinity(const std::function<double(double)>& f, double a, double abs_tol) {
  IntegralResult out;
  CompensatedSum sum;
  CompensatedSum err;
  double lo = a;
  double width = 1.0;
  int quiet = 0;
  for (int panel = 0; panel < 200; ++panel) {
    const double hi = lo + width;
    const IntegralResult piece = integrate_adaptive(f, lo, hi, 0.1 * abs_tol, 1e-13, 20);
    sum += piece.value;
    err += piece.est_error;
    out.converged = out.converged && piece.converged;
    quiet = std::abs(piece.value) < 1e-3 * abs_tol ? quiet + 1 : 0;
    if (quiet >= 3) break;
    lo = hi;
    width *= 1.5;
  }
  out.value = sum.value();
  out.est_error = err.value();
  return out;
}

double smooth_window(double u) noexcept {
  if (u <= 0.5) return 1.0;
  if (u >= 1.0) return 0.0;
  const double t = 2.0 * (u - 0.5);
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return b / (a + b);
}

double richardson_inverse_powers(std::span<const double> values, double* est_error) {
  const std::size_t k = values.size();
  if (k == 0) throw std::invalid_argument("richardson: no values");
  std::vector<double> row(values.begin(), values.end());
  double best = row.back();
  double prev = k > 1 ? row[k - 2] : row.back();
  for (std::size_t level = 1; level < k; ++level) {
    const double factor = std::ldexp(1.0, static_cast<int>(level)) - 1.0;
    std::vector<double> next(k - level);
    for (std::size_t i = 0; i + level < k; ++i) next[i] = row[i + 1] + (row[i + 1] - row[i]) / factor;
    prev = best;
    best = next.back();
    row = std::move(next);
  }
  if (est_error) *est_error = std::abs(best - prev);
  return best;
}

}  // namespace lpsphere::numerics
