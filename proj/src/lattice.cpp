#include "lpsphere/lattice.hpp"

#include "lpsphere/errors.hpp"
#include "lpsphere/leech_data.hpp"
#include "lpsphere/numerics.hpp"
#include "lpsphere/qseries.hpp"
#include "lpsphere/specfun.hpp"

#include <json.hpp>
#include <quadmath.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>

namespace lpsphere {

namespace {

constexpr double kPi = std::numbers::pi;

Rational exact_norm(std::int64_t scaled, const BigInt& scale) {
  Rational r(BigInt(static_cast<long>(scaled)), scale);
  r.canonicalize();
  return r;
}

}  // namespace

struct Lattice::Cache {
  std::once_flag once;
  Rational min_norm;
};

Lattice::Lattice(std::string name, RationalMatrix gram) : name_(std::move(name)), gram_(std::move(gram)) {
  if (gram_.size() < 1) throw PreconditionError("lattice: empty Gram matrix");
  if (!gram_.is_symmetric()) throw PreconditionError("lattice: Gram matrix is not symmetric");
  if (!gram_.is_positive_definite()) throw PreconditionError("lattice: Gram matrix is not positive definite");
  cache_ = std::make_shared<Cache>();
}

double Lattice::covolume() const { return std::sqrt(determinant().get_d()); }

bool Lattice::is_even() const {
  if (!is_integral()) return false;
  for (int i = 0; i < dimension(); ++i) {
    if (gram_(i, i).get_num() % 2 != 0) return false;
  }
  return true;
}

Lattice Lattice::scaled(const Rational& s) const {
  if (s <= 0) throw PreconditionError("lattice: scale must be positive");
  return Lattice(name_ + "*" + to_string(s), gram_.scaled(s));
}

Lattice Lattice::dual() const { return Lattice(name_ + "^dual", gram_.inverse()); }

Lattice Lattice::rebased(const RationalMatrix& u) const {
  if (u.size() != dimension() || !u.is_integral()) throw PreconditionError("lattice: change of basis must be integral");
  const Rational d = u.determinant();
  if (d != 1 && d != -1) throw PreconditionError("lattice: change of basis must be unimodular");
  return Lattice(name_, gram_.congruent(u));
}

Rational Lattice::min_norm() const {
  std::call_once(cache_->once, [this] {
    // Basis vectors have norms on the diagonal, so the shortest non-zero
    // vector has norm at most the smallest diagonal entry.
    Rational bound = gram_(0, 0);
    for (int i = 1; i < dimension(); ++i) bound = std::min(bound, gram_(i, i));
    const ShellMap s = theta_shells(*this, bound);
    cache_->min_norm = bound;
    for (const auto& [norm, count] : s.entries) {
      if (norm > 0) {
        cache_->min_norm = norm;
        break;
      }
    }
  });
  return cache_->min_norm;
}

namespace {

RationalMatrix cartan(int n, const std::vector<std::pair<int, int>>& edges) {
  RationalMatrix g(n);
  for (int i = 0; i < n; ++i) g(i, i) = 2;
  for (const auto& [a, b] : edges) g(a, b) = g(b, a) = -1;
  return g;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

Lattice builtin(std::string_view name) {
  const std::string key = lower(name);
  if (key.size() == 2 && key[0] == 'z' && key[1] >= '1' && key[1] <= '8') {
    const int n = key[1] - '0';
    return Lattice("Z" + std::to_string(n), RationalMatrix::identity(n));
  }
  if (key == "d4") return Lattice("D4", cartan(4, {{0, 1}, {1, 2}, {1, 3}}));
  if (key == "e8") return Lattice("E8", cartan(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}}));
  if (key == "leech") {
    Lattice l = lattice_from_json(detail::kLeechJson);
    return Lattice("Leech", l.gram());
  }
  throw PreconditionError("unknown lattice '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() {
  return {"z1", "z2", "z3", "z4", "z5", "z6", "z7", "z8", "d4", "e8", "leech"};
}

Lattice lattice_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("lattice file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("gram") || !doc["gram"].is_array())
    throw PreconditionError("lattice file: missing 'gram' array");
  const auto& rows = doc["gram"];
  const int n = static_cast<int>(rows.size());
  if (doc.contains("n") && (!doc["n"].is_number_integer() || doc["n"].get<int>() != n))
    throw PreconditionError("lattice file: 'n' does not match the Gram size");
  RationalMatrix g(n);
  for (int i = 0; i < n; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
      throw PreconditionError("lattice file: Gram must be square");
    for (int j = 0; j < n; ++j) {
      const auto& e = rows[i][j];
      if (e.is_string()) {
        g(i, j) = parse_rational(e.get<std::string>());
      } else if (e.is_number_integer()) {
        g(i, j) = Rational(BigInt(std::to_string(e.get<long long>())));
      } else {
        throw PreconditionError("lattice file: entries must be \"p/q\" strings or integers");
      }
    }
  }
  const std::string name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "lattice";
  return Lattice(name, std::move(g));
}

std::string lattice_to_json(const Lattice& lattice) {
  nlohmann::ordered_json doc;
  doc["name"] = lattice.name();
  doc["n"] = lattice.dimension();
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < lattice.dimension(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < lattice.dimension(); ++j) row.push_back(to_string(lattice.gram()(i, j)));
    rows.push_back(row);
  }
  doc["gram"] = rows;
  return doc.dump();
}

ShellMap shells(const Lattice& lattice, const Rational& up_to, enumeration::Budget budget) {
  if (up_to <= 0) throw PreconditionError("shells: bound must be positive");
  const enumeration::Problem problem(lattice.gram());
  ShellMap out;
  out.complete_up_to = up_to;
  for (const auto& [scaled, count] : enumeration::count_parallel(problem, up_to, budget)) {
    out.entries[exact_norm(scaled, problem.scale())] += BigInt(static_cast<unsigned long>(count));
  }
  return out;
}

namespace {

std::vector<std::vector<int>> orthogonal_blocks(const RationalMatrix& g) {
  const int n = g.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g(i, j) != 0) parent[find(i)] = find(j);
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

RationalMatrix submatrix(const RationalMatrix& g, const std::vector<int>& idx) {
  RationalMatrix s(static_cast<int>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) s(static_cast<int>(i), static_cast<int>(j)) = g(idx[i], idx[j]);
  return s;
}

// Theta series of an even unimodular lattice of dimension 8m lies in the span
// of E4^{m-3j} Δ^j, j ≤ m/3; Δ^j starts at q^j, so the first m/3 + 1 shells
// determine the combination.
ShellMap even_unimodular_shells(const Lattice& block, const Rational& up_to) {
  const int m = block.dimension() / 8;
  const int J = m / 3;
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), up_to.get_num_mpz_t(), up_to.get_den_mpz_t());
  const int K = std::max(static_cast<int>(fl.get_si() / 2), J);
  std::vector<Rational> known(J + 1, Rational(0));
  known[0] = 1;
  if (J > 0) {
    for (const auto& [norm, count] : shells(block, Rational(2 * J)).entries)
      known[static_cast<int>(norm.get_d() / 2)] = Rational(count);
  }

  const QSeries e4 = eisenstein_e4(K);
  const QSeries delta = delta_cusp(K);
  std::vector<QSeries> basis;
  for (int j = 0; j <= J; ++j) basis.push_back(series_mul(series_pow(e4, m - 3 * j), series_pow(delta, j)));
  QSeries theta(K);
  for (int j = 0; j <= J; ++j) {
    const Rational a = known[j] - theta[j];
    theta = theta + a * basis[j];
  }
  if (!theta.all_integral()) throw std::logic_error("modular completion produced non-integral coefficients");
  ShellMap out;
  out.complete_up_to = up_to;
  for (int k = 0; k <= K; ++k) {
    if (theta[k] != 0 && Rational(2 * k) <= up_to) out.entries[Rational(2 * k)] = theta[k].get_num();
  }
  return out;
}

ShellMap convolve(const ShellMap& a, const ShellMap& b, const Rational& up_to) {
  ShellMap out;
  out.complete_up_to = up_to;
  for (const auto& [na, ca] : a.entries) {
    for (const auto& [nb, cb] : b.entries) {
      const Rational s = na + nb;
      if (s > up_to) break;
      out.entries[s] += ca * cb;
    }
  }
  return out;
}

// c > 0 with G / c integral and primitive.
Rational content(const RationalMatrix& g) {
  BigInt num = 0;
  BigInt den = 1;
  for (int i = 0; i < g.size(); ++i) {
    for (int j = 0; j < g.size(); ++j) {
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), g(i, j).get_num_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), g(i, j).get_den_mpz_t());
    }
  }
  Rational c(num, den);
  c.canonicalize();
  return c;
}

ShellMap block_shells(const Lattice& block, const Rational& up_to) {
  if (block.dimension() % 8 == 0) {
    // A rescaled even unimodular lattice still has a modular theta series.
    const Rational c = content(block.gram());
    const Lattice primitive(block.name(), block.gram().scaled(1 / c));
    if (primitive.is_even() && primitive.determinant() == 1) {
      const ShellMap base = even_unimodular_shells(primitive, up_to / c);
      ShellMap out;
      out.complete_up_to = up_to;
      for (const auto& [norm, count] : base.entries) out.entries[norm * c] = count;
      return out;
    }
  }
  return shells(block, up_to);
}

}  // namespace

ShellMap theta_shells(const Lattice& lattice, const Rational& up_to) {
  if (up_to <= 0) throw PreconditionError("theta_shells: bound must be positive");
  ShellMap total;
  total.complete_up_to = up_to;
  total.entries[Rational(0)] = 1;
  for (const auto& idx : orthogonal_blocks(lattice.gram())) {
    const Lattice block(lattice.name(), submatrix(lattice.gram(), idx));
    total = convolve(total, block_shells(block, up_to), up_to);
  }
  return total;
}

double shell_tail_bound(int n, double min_norm, double N, const std::function<double(double)>& G) {
  const double rho = 0.5 * std::sqrt(min_norm);
  const double R0 = std::sqrt(N);
  const double head = G(R0) * std::pow((R0 + rho) / rho, n);
  const auto integrand = [&](double u) { return G(u) * std::pow(u + rho, n - 1); };
  const auto tail = numerics::integrate_to_infinity(integrand, R0, 1e-30);
  return 1.01 * (head + n / std::pow(rho, n) * (tail.value + tail.est_error));
}

double shell_tail_bound_algebraic(int n, double min_norm, double N, double C, double eps) {
  const double rho = 0.5 * std::sqrt(min_norm);
  const double R0 = std::sqrt(N);
  const double head = C * std::pow(1.0 + R0, -n - eps) * std::pow((R0 + rho) / rho, n);
  // (u + ρ)^{n-1} ≤ max(1, ρ)^{n-1} (1 + u)^{n-1}.
  const double integral = std::pow(std::max(1.0, rho), n - 1) * C * std::pow(1.0 + R0, -eps) / eps;
  return head + n / std::pow(rho, n) * integral;
}

namespace {

// Smallest N on a geometric grid with bound(N) ≤ tol.  Past `limit` either
// throws or, with `clamp`, returns the limit.
double choose_cutoff(double start, double tol, const std::function<double(double)>& bound, double limit = 1e7,
                     bool clamp = false) {
  double N = start;
  while (bound(N) > tol) {
    N *= 1.25;
    if (N > limit) {
      if (clamp) return limit;
      throw AccuracyError("no truncation meets the tail tolerance", 0.0, bound(N));
    }
  }
  return N;
}

Rational ceil_rational(double x) { return Rational(BigInt(static_cast<long>(std::ceil(x)))); }

// Exact rational to quad precision via a 113-bit scaled integer quotient.
__float128 to_quad(const Rational& q) {
  if (q == 0) return 0;
  const long shift = 110 - static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) +
                     static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  BigInt scaled = q.get_num();
  if (shift >= 0) {
    scaled <<= shift;
  } else {
    scaled >>= -shift;
  }
  scaled /= q.get_den();
  // scaled has at most 112 bits: sum three 40-bit chunks, each exact in a double.
  __float128 value = 0;
  for (int chunk = 2; chunk >= 0; --chunk) {
    BigInt part = scaled >> (40 * chunk);
    if (chunk < 2) part &= (BigInt(1) << 40) - 1;
    value += ldexpq(static_cast<__float128>(part.get_d()), 40 * chunk);
  }
  return ldexpq(value, static_cast<int>(-shift));
}

}  // namespace

LatticeSum theta_T(const Lattice& lattice, double y, const ShellMap& s, double tol) {
  if (!(y > 0.0)) throw DomainError("theta_T: y must be positive");
  numerics::CompensatedSum sum;
  for (auto it = s.entries.rbegin(); it != s.entries.rend(); ++it) sum += it->second.get_d() * std::exp(-it->first.get_d() * y);
  LatticeSum out;
  out.value = sum.value();
  out.tail_bound = shell_tail_bound(lattice.dimension(), lattice.min_norm().get_d(), s.complete_up_to.get_d(),
                                    [y](double u) { return std::exp(-u * u * y); });
  if (out.tail_bound > tol) throw AccuracyError("theta_T: shells too shallow for the tail tolerance", out.value, out.tail_bound);
  return out;
}

LatticeSum theta_T(const Lattice& lattice, double y, double tol) {
  if (!(y > 0.0)) throw DomainError("theta_T: y must be positive");
  const int n = lattice.dimension();
  const double m = lattice.min_norm().get_d();
  const auto G = [y](double u) { return std::exp(-u * u * y); };
  const double N = choose_cutoff(std::max(m, 1.0 / y), 0.5 * tol, [&](double N) { return shell_tail_bound(n, m, N, G); });
  return theta_T(lattice, y, theta_shells(lattice, ceil_rational(N)), tol);
}

double theta_transform_check(const Lattice& lattice, double y, double tol) {
  if (!(y > 0.0)) throw DomainError("theta_transform_check: y must be positive");
  const int n = lattice.dimension();
  const double covol = lattice.covolume();
  const LatticeSum dual_sum = theta_T(lattice.dual(), y, tol);
  const double yt = kPi * kPi / y;
  const LatticeSum primal_sum = theta_T(lattice, yt, tol);
  const double lhs = dual_sum.value / (std::pow(2.0, n) * covol);
  const double rhs = std::pow(4.0 * kPi, -0.5 * n) * std::pow(yt, 0.5 * n) * primal_sum.value;
  return std::abs(lhs - rhs);
}

PoissonResult poisson_check(const Lattice& lattice, const RadialFunction& f, const std::vector<Rational>& v, double tol) {
  const int n = lattice.dimension();
  if (f.dimension() != n) throw PreconditionError("poisson_check: dimension mismatch");
  if (!v.empty() && static_cast<int>(v.size()) != n) throw PreconditionError("poisson_check: shift has wrong length");
  if (!f.exact_transform()) throw PreconditionError("poisson_check: a closed-form transform is required");
  const Lattice dual = lattice.dual();
  const double m = lattice.min_norm().get_d();
  const double md = dual.min_norm().get_d();

  PoissonResult out;
  // Primal side: points x + v with |x + v|² ≤ N.
  {
    const Decay& d = f.decay();
    double N;
    if (f.support()) {
      N = *f.support() * *f.support();
      out.lhs.tail_bound = 0.0;
    } else if (f.monotone()) {
      const auto G = [&](double u) { return std::abs(f(u)); };
      const auto bound = [&](double N) { return shell_tail_bound(n, m, N, G); };
      N = choose_cutoff(std::max(m, 1.0), 0.25 * tol, bound);
      out.lhs.tail_bound = bound(N);
    } else {
      N = choose_cutoff(std::max({m, 1.0, d.from * d.from}), 0.25 * tol,
                        [&](double N) { return shell_tail_bound_algebraic(n, m, N, d.C, d.eps); });
      out.lhs.tail_bound = shell_tail_bound_algebraic(n, m, N, d.C, d.eps);
    }
    const enumeration::Problem problem(lattice.gram(), v);
    const double scale = problem.scale().get_d();
    numerics::CompensatedSum sum;
    enumeration::for_each_point(problem, ceil_rational(N), [&](std::span<const std::int64_t>, std::int64_t norm) {
      sum += f(std::sqrt(static_cast<double>(norm) / scale));
    });
    out.lhs.value = sum.value();
  }
  // Dual side with the phase e^{-2πi⟨v,t⟩}; ⟨v, t⟩ = Σ v_i t_i in dual coordinates.
  {
    const auto& fhat = *f.exact_transform();
    double N;
    if (f.transform_support()) {
      N = *f.transform_support() * *f.transform_support();
      out.rhs.tail_bound = 0.0;
    } else if (f.transform_monotone()) {
      const auto G = [&](double u) { return std::abs(fhat(u)); };
      const auto bound = [&](double N) { return shell_tail_bound(n, md, N, G); };
      N = choose_cutoff(std::max(md, 1.0), 0.25 * tol * lattice.covolume(), bound);
      out.rhs.tail_bound = bound(N) / lattice.covolume();
    } else {
      const Decay& d = f.transform_decay();
      if (!std::isfinite(d.from)) throw PreconditionError("poisson_check: transform has no decay bound");
      N = choose_cutoff(std::max({md, 1.0, d.from * d.from}), 0.25 * tol * lattice.covolume(),
                        [&](double N) { return shell_tail_bound_algebraic(n, md, N, d.C, d.eps); });
      out.rhs.tail_bound = shell_tail_bound_algebraic(n, md, N, d.C, d.eps) / lattice.covolume();
    }
    BigInt den = 1;
    for (const auto& vi : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), vi.get_den_mpz_t());
    std::vector<std::int64_t> num;
    for (const auto& vi : v) num.push_back((Rational(vi * Rational(den))).get_num().get_si());
    const std::int64_t d = den.get_si();
    const enumeration::Problem problem(dual.gram());
    const double scale = problem.scale().get_d();
    numerics::CompensatedSum sum;
    enumeration::for_each_point(problem, ceil_rational(N), [&](std::span<const std::int64_t> t, std::int64_t norm) {
      std::int64_t phase = 0;
      for (std::size_t i = 0; i < num.size(); ++i) phase = (phase + (num[i] % d) * (t[i] % d)) % d;
      const double c = num.empty() ? 1.0 : std::cos(2.0 * kPi * static_cast<double>(phase) / static_cast<double>(d));
      sum += c * fhat(std::sqrt(static_cast<double>(norm) / scale));
    });
    out.rhs.value = sum.value() / lattice.covolume();
  }
  out.residual = std::abs(out.lhs.value - out.rhs.value);
  return out;
}

std::vector<LatticeSum> laguerre_positivity_check(const Lattice& lattice, int k_max, double y, double tol) {
  if (k_max < 0) throw PreconditionError("laguerre_positivity_check: k_max must be non-negative");
  if (!(y > 0.0)) throw DomainError("laguerre_positivity_check: y must be positive");
  const int n = lattice.dimension();
  const double alpha = 0.5 * n - 1.0;
  const double m = lattice.min_norm().get_d();
  const auto bound_at = [&](int k, double N) {
    return shell_tail_bound(n, m, N, [&](double u) { return laguerre_majorant(k, alpha, u * u * y) * std::exp(-u * u * y); });
  };
  // x ↦ P(x) e^{-x} decreases for x ≥ k when P has degree k and positive coefficients.
  const double N = choose_cutoff(std::max(m, (k_max + 1.0) / y), tol, [&](double N) {
    double worst = 0.0;
    for (int k = 0; k <= k_max; ++k) worst = std::max(worst, bound_at(k, N));
    return worst;
  });
  const ShellMap s = theta_shells(lattice, ceil_rational(N));
  // Individual terms can exceed the total by many orders of magnitude, so the
  // sums are accumulated in quad precision.
  using quad = __float128;
  std::vector<quad> sums(k_max + 1, 0);
  std::vector<quad> lag(k_max + 1);
  const quad a = alpha;
  for (auto it = s.entries.rbegin(); it != s.entries.rend(); ++it) {
    const quad x = to_quad(it->first) * static_cast<quad>(y);
    const quad w = to_quad(Rational(it->second)) * expq(-x);
    lag[0] = 1;
    if (k_max >= 1) lag[1] = 1 + a - x;
    for (int k = 1; k < k_max; ++k) lag[k + 1] = ((2 * k + 1 + a - x) * lag[k] - (k + a) * lag[k - 1]) / (k + 1);
    for (int k = 0; k <= k_max; ++k) sums[k] += w * lag[k];
  }
  std::vector<LatticeSum> out(k_max + 1);
  for (int k = 0; k <= k_max; ++k) out[k] = LatticeSum{static_cast<double>(sums[k]), bound_at(k, s.complete_up_to.get_d())};
  return out;
}

CenterDensity center_density(const Lattice& lattice) {
  const int n = lattice.dimension();
  const Rational m = lattice.min_norm();
  const Rational det = lattice.determinant();
  CenterDensity out;
  out.algebraic = std::pow(m.get_d() / 4.0, 0.5 * n) / std::sqrt(det.get_d());
  if (n % 2 == 0 && mpz_perfect_square_p(det.get_num_mpz_t()) && mpz_perfect_square_p(det.get_den_mpz_t())) {
    BigInt num, den;
    mpz_sqrt(num.get_mpz_t(), det.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), det.get_den_mpz_t());
    Rational q = m / 4;
    Rational p = 1;
    for (int i = 0; i < n / 2; ++i) p *= q;
    Rational root(num, den);
    root.canonicalize();
    out.algebraic_exact = p / root;
  }
  // y^{n/2} T(y) (4π)^{-n/2} on the rescaled lattice; the deviation from the
  // limit is exponentially small in 1/y.
  const Lattice unit = lattice.scaled(1 / m);
  std::vector<double> values;
  for (int k = 0; k < 4; ++k) {
    const double y = 0.5 * std::ldexp(1.0, -k);
    const LatticeSum t = theta_T(unit, y, 1e-13 * std::pow(y, -0.5 * n));
    values.push_back(std::pow(y / (4.0 * kPi), 0.5 * n) * t.value);
  }
  double err = 0.0;
  out.limit = numerics::richardson_inverse_powers(values, &err);
  out.limit_error = err;
  if (!(err < 1e-6 * out.limit)) throw AccuracyError("center_density: extrapolation did not settle", out.limit, err);
  return out;
}

DualFeasibilityReport dual_feasibility(const Lattice& lattice, const std::vector<RadialFunction>& tests,
                                       double dual_norm_bound) {
  const int n = lattice.dimension();
  DualFeasibilityReport r;
  r.min_norm = lattice.min_norm();
  if (r.min_norm < 1) throw PreconditionError("dual_feasibility: rescale the lattice to minimal norm at least 1");
  if (tests.empty()) throw PreconditionError("dual_feasibility: no test functions");
  const double covol = lattice.covolume();
  r.c = 1.0 / covol;
  const Lattice dual = lattice.dual();
  const double md = dual.min_norm().get_d();
  for (const auto& phi : tests) {
    if (phi.dimension() != n) throw PreconditionError("dual_feasibility: test dimension mismatch");
    for (double u = 0.0; u <= 20.0; u += 0.01) {
      if (phi(u) < 0.0) throw PreconditionError("dual_feasibility: test function '" + phi.name() + "' is negative");
    }
  }
  double N = dual_norm_bound;
  if (!(N > 0.0)) {
    N = 4.0 * md;
    for (const auto& phi : tests) {
      const Decay& d = phi.decay();
      const double from = std::max(1.0, d.from * d.from);
      N = std::max(N, choose_cutoff(std::max(md, from), 1e-12, [&](double x) {
                     return shell_tail_bound_algebraic(n, md, x, d.C, d.eps);
                   }, 64.0 * std::max(md, from), true));
    }
  }
  r.dual_norm_bound = N;
  const ShellMap s = theta_shells(dual, ceil_rational(N));
  r.margin = std::numeric_limits<double>::infinity();
  for (const auto& phi : tests) {
    numerics::CompensatedSum sum;
    for (auto it = s.entries.rbegin(); it != s.entries.rend(); ++it) {
      if (it->first == 0) continue;
      sum += it->second.get_d() * phi(std::sqrt(it->first.get_d()));
    }
    const double slack = sum.value() / covol;
    r.tests.push_back(phi.name());
    r.slacks.push_back(slack);
    r.margin = std::min(r.margin, slack);
  }
  return r;
}

}  // namespace lpsphere
