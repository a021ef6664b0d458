#include "cli.hpp"

#include "lpsphere/errors.hpp"
#include "lpsphere/lattice.hpp"
#include "lpsphere/lpquad.hpp"
#include "lpsphere/qseries.hpp"
#include "lpsphere/radial.hpp"
#include "lpsphere/silp.hpp"
#include "lpsphere/specfun.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

namespace lpsphere::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSchema = "lpsphere-report/1";
constexpr double kPi = std::numbers::pi;

/// Bad user input detected after parsing; maps to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string output = "json";
  std::optional<double> tol;
  unsigned long long seed = 1;
  std::string plot_path;
};

struct Outcome {
  Json report;
  bool pass = true;
  // (x, y) rows for --emit-plot-data.
  std::vector<std::pair<std::string, std::string>> plot;
  std::string plot_header = "x,y";
  // Pre-rendered csv/text tables, when the command supports them.
  std::string csv;
  std::string text;
};

Json real(double x) { return format_real(x); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    cur.erase(0, cur.find_first_not_of(" \t"));
    cur.erase(cur.find_last_not_of(" \t") + 1);
    if (!cur.empty()) parts.push_back(cur);
  }
  return parts;
}

double parse_real(const std::string& s) {
  if (s == "pi") return kPi;
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("not a number: '" + s + "'");
}

std::vector<double> parse_reals(const std::string& s) {
  std::vector<double> out;
  for (const auto& p : split(s, ',')) out.push_back(parse_real(p));
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

/// "a..b" or "a".
std::vector<int> parse_range(const std::string& s, int lo, int hi) {
  int a = 0;
  int b = 0;
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      a = b = std::stoi(s);
    } else {
      a = std::stoi(s.substr(0, dots));
      b = std::stoi(s.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw ConfigError("bad range '" + s + "'");
  }
  if (a > b) throw ConfigError("empty range '" + s + "'");
  if (a < lo || b > hi) {
    throw ConfigError("range '" + s + "' outside " + std::to_string(lo) + ".." + std::to_string(hi));
  }
  std::vector<int> out;
  for (int i = a; i <= b; ++i) out.push_back(i);
  return out;
}

Order parse_order(double alpha) {
  const double twice = 2.0 * alpha;
  if (std::abs(twice - std::round(twice)) > 1e-12 || twice < -1.0) {
    throw ConfigError("alpha must be a half-integer >= -1/2");
  }
  return Order(static_cast<int>(std::lround(twice)));
}

Lattice load_lattice(const std::string& source, const std::string& scale) {
  Lattice lattice = [&] {
    for (const auto& name : builtin_names())
      if (name == source) return builtin(source);
    std::ifstream in(source);
    if (!in) throw ConfigError("unknown lattice '" + source + "' (not a built-in name or readable file)");
    std::stringstream text;
    text << in.rdbuf();
    return lattice_from_json(text.str());
  }();
  if (lattice.dimension() > 24) throw ConfigError("lattices are supported up to dimension 24");
  if (!scale.empty()) lattice = lattice.scaled(parse_rational(scale));
  return lattice;
}

double tolerance(const Common& c, double fallback) {
  double tol = fallback;
  if (const char* env = std::getenv("LP_SPHERE_TOL"); env && *env) tol = parse_real(env);
  if (c.tol) tol = *c.tol;
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
  return tol;
}

Json header(const std::string& command, double tol) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["tolerance"] = real(tol);
  return j;
}

void finish(Outcome& o) { o.report["status"] = o.pass ? "pass" : "violation"; }

// ---- bound ---------------------------------------------------------------

Outcome cmd_bound(const Common& c, const std::string& dims_text) {
  const auto dims = parse_range(dims_text, 1, 36);
  const double tol = tolerance(c, 1e-12);
  struct Row {
    int n;
    double root;
    BoundResult b;
    double residual;
  };
  std::vector<Row> rows(dims.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const int n = dims[i];
    const double j = levensh_root(n);
    // w0·f(0) for the Bessel function against its transform at 0, vol(B_1).
    const double w0 = bgf_rule(n, j / kPi, 1).w0;
    const double f0 = levensh_fn(n)(0.0);
    const double vol = ball_volume(n, 1.0);
    rows[i] = {n, j, bessel_bound(n), std::abs(w0 * f0 - vol) / vol};
  }
  Outcome o;
  o.report = header("bound", tol);
  Json table = Json::array();
  std::ostringstream csv;
  std::ostringstream text;
  csv << "n,j_n/2,density_bound,center_density_bound,identity_residual\n";
  text << "   n        j_{n/2}        density bound  center density bound\n";
  for (const auto& r : rows) {
    table.push_back({{"n", r.n},
                     {"j", real(r.root)},
                     {"density_bound", real(r.b.density_bound)},
                     {"center_density_bound", real(r.b.center_density_bound)},
                     {"identity_residual", real(r.residual)}});
    csv << r.n << ',' << format_real(r.root) << ',' << format_real(r.b.density_bound) << ','
        << format_real(r.b.center_density_bound) << ',' << format_real(r.residual) << '\n';
    char line[160];
    std::snprintf(line, sizeof line, "%4d %14.10f %20.15g %21.15g\n", r.n, r.root, r.b.density_bound,
                  r.b.center_density_bound);
    text << line;
    o.plot.emplace_back(std::to_string(r.n), format_real(r.b.density_bound));
    o.pass = o.pass && r.residual < tol;
  }
  o.report["source"] = to_string(BoundSource::bessel_closed_form);
  o.report["rows"] = table;
  o.plot_header = "n,density_bound";
  o.csv = csv.str();
  o.text = text.str();
  finish(o);
  return o;
}

// ---- theta ---------------------------------------------------------------

Outcome cmd_theta(const Common& c, const std::string& name, int K) {
  if (K < 0) throw ConfigError("K must be non-negative");
  QSeries s = [&] {
    if (name == "e8") return eisenstein_e4(K);
    if (name == "leech") return theta_leech(K);
    if (name == "theta72") return theta72(K);
    throw ConfigError("unknown series '" + name + "' (expected e8, leech or theta72)");
  }();
  Outcome o;
  o.report = header("theta " + name, tolerance(c, 1e-12));
  o.report["K"] = K;
  Json coeffs = Json::array();
  std::ostringstream csv;
  std::ostringstream text;
  csv << "k,norm,coefficient\n";
  for (int k = 0; k <= K; ++k) {
    const std::string v = to_string(s[k]);
    coeffs.push_back({{"k", k}, {"norm", 2 * k}, {"coefficient", v}});
    csv << k << ',' << 2 * k << ',' << v << '\n';
    text << "norm " << 2 * k << ": " << v << '\n';
    o.plot.emplace_back(std::to_string(2 * k), v);
  }
  const ExtremalityReport e = extremality(s);
  o.report["coefficients"] = coeffs;
  Json ext;
  ext["min_norm"] = e.min_norm;
  ext["integral"] = e.integral;
  ext["checked_up_to"] = e.checked_up_to;
  Json neg = Json::array();
  for (const auto& [k, v] : e.negative_coeffs) neg.push_back({{"k", k}, {"coefficient", to_string(v)}});
  ext["negative_coefficients"] = neg;
  o.report["extremality"] = ext;
  if (name == "theta72") {
    // Extremal: zero at norms 2, 4, 6, integral, nothing negative.
    bool zeros = true;
    for (int k = 1; k <= std::min(K, 3); ++k) zeros = zeros && s[k] == 0;
    o.pass = zeros && e.integral && e.negative_coeffs.empty() && s[0] == 1;
  } else {
    o.pass = e.integral && e.negative_coeffs.empty();
  }
  o.plot_header = "norm,coefficient";
  o.csv = csv.str();
  o.text = text.str();
  finish(o);
  return o;
}

// ---- checks --------------------------------------------------------------

struct CheckArgs {
  std::string dims = "3";
  std::string radii = "2";
  int nodes = 400;
  std::string function;
  std::string u = "0,0.5";
  std::string lattice;
  std::string scale;
  std::string shift;
  double gauss_s = 1.0;
  std::string y;
  int kmax = 15;
  double alpha = 0.0;
  int jmax = 12;
  double c = 1.0;
  int pairs = 20;
  std::string tests = "gaussian,autocorr";
};

Outcome check_quadrature(const Common& c, const CheckArgs& a) {
  const double tol = tolerance(c, 1e-8);
  const auto dims = parse_range(a.dims, 1, 36);
  const std::string fn = a.function.empty() ? "autocorr" : a.function;
  if (fn != "autocorr" && fn != "levensh") throw ConfigError("quadrature functions: autocorr, levensh");
  if (a.nodes < 1) throw ConfigError("nodes must be positive");
  Outcome o;
  o.report = header("check quadrature", tol);
  o.report["function"] = fn;
  o.report["nodes"] = a.nodes;
  Json rows = Json::array();
  for (int n : dims) {
    const std::vector<double> radii = fn == "levensh" ? std::vector<double>{levensh_root(n) / kPi} : parse_reals(a.radii);
    for (double r : radii) {
      const RadialFunction f = fn == "levensh" ? levensh_fn(n) : autocorr_fn(n, r);
      const double expected = fn == "levensh" ? radial_ft(f, 0.0).value : ball_volume(n, 0.5 * r);
      const QuadratureResult q = bgf_apply(bgf_rule(n, r, a.nodes), f, {tol});
      const double residual = std::abs(q.value - expected) / std::abs(expected);
      rows.push_back({{"n", n},
                      {"r", real(r)},
                      {"value", real(q.value)},
                      {"expected", real(expected)},
                      {"residual", real(residual)},
                      {"observed_tail", real(q.observed_tail)},
                      {"envelope_tail", real(q.envelope_tail)}});
      o.plot.emplace_back(std::to_string(n), format_real(residual));
      o.pass = o.pass && residual < tol;
    }
  }
  o.report["rows"] = rows;
  o.plot_header = "n,residual";
  finish(o);
  return o;
}

Outcome check_dini(const Common& c, const CheckArgs& a) {
  const double tol = tolerance(c, 1e-6);
  const auto dims = parse_range(a.dims, 1, 36);
  const std::string fn = a.function.empty() ? "autocorr-squared" : a.function;
  if (fn != "autocorr" && fn != "autocorr-squared") throw ConfigError("dini functions: autocorr, autocorr-squared");
  const auto radii = parse_reals(a.radii);
  const auto us = parse_reals(a.u);
  Outcome o;
  o.report = header("check dini", tol);
  o.report["function"] = fn;
  o.report["nodes"] = a.nodes;
  Json rows = Json::array();
  for (int n : dims) {
    for (double r : radii) {
      const RadialFunction f = fn == "autocorr" ? autocorr_fn(n, r) : autocorr_squared_fn(n, r);
      const auto samples = dini_samples(f, r, a.nodes);
      const double scale = f.exact_transform() ? (*f.exact_transform())(0.0) : radial_ft(f, 0.0).value;
      for (double u : us) {
        const double expected = f.exact_transform() ? (*f.exact_transform())(r * u) : radial_ft(f, r * u).value;
        const DiniResult d = dini_interpolate(n, r, samples, u, tol);
        const double residual = std::abs(d.value - expected) / scale;
        rows.push_back({{"n", n},
                        {"r", real(r)},
                        {"u", real(u)},
                        {"value", real(d.value)},
                        {"expected", real(expected)},
                        {"residual", real(residual)},
                        {"tail_estimate", real(d.tail_estimate)}});
        o.plot.emplace_back(format_real(u), format_real(d.value));
        o.pass = o.pass && residual < tol;
      }
    }
  }
  o.report["rows"] = rows;
  o.plot_header = "u,value";
  finish(o);
  return o;
}

Outcome check_poisson(const Common& c, const CheckArgs& a) {
  const double tol = tolerance(c, 1e-9);
  const Lattice lattice = load_lattice(a.lattice.empty() ? "z1" : a.lattice, a.scale);
  const std::string fn = a.function.empty() ? "gaussian" : a.function;
  if (fn != "gaussian") throw ConfigError("poisson functions: gaussian");
  std::vector<Rational> v;
  for (const auto& p : split(a.shift, ',')) v.push_back(parse_rational(p));
  if (!v.empty() && static_cast<int>(v.size()) != lattice.dimension()) {
    throw ConfigError("shift must have one entry per dimension");
  }
  const PoissonResult r = poisson_check(lattice, gaussian(lattice.dimension(), a.gauss_s), v, std::min(tol, 1e-12));
  Outcome o;
  o.report = header("check poisson", tol);
  o.report["lattice"] = lattice.name();
  Json shift = Json::array();
  for (const auto& q : v) shift.push_back(to_string(q));
  o.report["shift"] = shift;
  o.report["gaussian_scale"] = real(a.gauss_s);
  o.report["lhs"] = real(r.lhs.value);
  o.report["rhs"] = real(r.rhs.value);
  o.report["residual"] = real(r.residual);
  o.pass = r.residual < tol;
  finish(o);
  return o;
}

Outcome check_theta_transform(const Common& c, const CheckArgs& a) {
  const double tol = tolerance(c, 1e-9);
  const auto names = split(a.lattice.empty() ? "z1,z2,d4,e8" : a.lattice, ',');
  const auto ys = parse_reals(a.y.empty() ? "1,pi,5" : a.y);
  Outcome o;
  o.report = header("check theta-transform", tol);
  Json rows = Json::array();
  for (const auto& name : names) {
    const Lattice lattice = load_lattice(name, a.scale);
    for (double y : ys) {
      const double residual = theta_transform_check(lattice, y, std::min(1e-13, 1e-3 * tol));
      rows.push_back({{"lattice", lattice.name()}, {"y", real(y)}, {"residual", real(residual)}});
      o.pass = o.pass && residual < tol;
    }
  }
  o.report["rows"] = rows;
  finish(o);
  return o;
}

Outcome check_thetacoeff(const Common& c, const CheckArgs& a) {
  const double tol = tolerance(c, 1e-9);
  const auto names = split(a.lattice.empty() ? "e8" : a.lattice, ',');
  const auto ys = parse_reals(a.y.empty() ? "0.5,1,2" : a.y);
  if (a.kmax < 0) throw ConfigError("kmax must be non-negative");
  Outcome o;
  o.report = header("check thetacoeff", tol);
  o.report["kmax"] = a.kmax;
  Json rows = Json::array();
  for (const auto& name : names) {
    const Lattice lattice = load_lattice(name, a.scale);
    for (double y : ys) {
      const auto sums = laguerre_positivity_check(lattice, a.kmax, y);
      Json values = Json::array();
      double least = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < sums.size(); ++k) {
        values.push_back(real(sums[k].value));
        least = std::min(least, sums[k].value);
        o.plot.emplace_back(std::to_string(k), format_real(sums[k].value));
      }
      rows.push_back({{"lattice", lattice.name()}, {"y", real(y)}, {"min", real(least)}, {"sums", values}});
      o.pass = o.pass && least >= -tol;
    }
  }
  o.report["rows"] = rows;
  o.plot_header = "k,sum";
  finish(o);
  return o;
}

Json silp_json(const SilpReport& r) {
  Json j;
  j["alpha"] = real(r.alpha.value());
  Json ys = Json::array();
  for (double y : r.y_grid) ys.push_back(real(y));
  j["y_grid"] = ys;
  j["j_max"] = r.j_max;
  Json m = Json::array();
  for (const auto& row : r.coeffs) {
    Json line = Json::array();
    for (double v : row) line.push_back(real(v));
    m.push_back(line);
  }
  j["coeffs"] = m;
  j["min_coeff"] = real(r.min_coeff);
  j["argmin"] = {{"j", r.argmin_j}, {"y", real(r.argmin_y)}};
  j["failed_cells"] = r.failed_cells;
  j["verdict"] = to_string(r.verdict);
  return j;
}

Outcome check_silp(const Common& c, const CheckArgs& a, bool& inconclusive) {
  const std::string fn = a.function.empty() ? "exp" : a.function;
  const Order alpha = parse_order(a.alpha);
  const auto ys = a.y.empty() ? default_y_grid() : parse_reals(a.y);
  if (a.jmax < 0) throw ConfigError("jmax must be non-negative");
  Outcome o;
  if (fn == "product-sweep") {
    const double tol = tolerance(c, 1e-8);
    o.report = header("check silp", tol);
    o.report["function"] = fn;
    o.report["seed"] = c.seed;
    std::mt19937_64 rng(c.seed);
    auto uniform = [&rng](double lo, double hi) {
      return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    auto measure = [&] {
      std::vector<std::pair<double, double>> atoms;
      for (int i = 0; i < 3; ++i) atoms.emplace_back(uniform(0.1, 3.0), uniform(0.0, 1.0));
      return silp_from_measure(atoms, alpha);
    };
    Json rows = Json::array();
    double least = std::numeric_limits<double>::infinity();
    for (int p = 0; p < a.pairs; ++p) {
      const auto f = measure();
      const auto g = measure();
      const SilpReport r = silp_check(product(f, g), alpha, ys, a.jmax, tol);
      rows.push_back({{"pair", p}, {"min_coeff", real(r.min_coeff)}, {"verdict", to_string(r.verdict)}});
      least = std::min(least, r.min_coeff);
      inconclusive = inconclusive || r.verdict == SilpVerdict::inconclusive;
      o.pass = o.pass && r.min_coeff >= -tol;
    }
    o.report["pairs"] = rows;
    o.report["min_coeff"] = real(least);
    finish(o);
    return o;
  }
  const double tol = tolerance(c, 1e-9);
  HalfLineFunction f = [&] {
    if (fn == "exp") return exponential_fn();
    if (fn == "omega") return omega_fn(alpha, a.c);
    throw ConfigError("silp functions: exp, omega, product-sweep");
  }();
  const SilpReport r = silp_check(f, alpha, ys, a.jmax, tol);
  o.report = header("check silp", tol);
  o.report["function"] = fn;
  o.report["report"] = silp_json(r);
  for (int j = 0; j <= r.j_max; ++j)
    for (std::size_t i = 0; i < ys.size(); ++i)
      o.plot.emplace_back(std::to_string(j) + "," + format_real(ys[i]), format_real(r.coeffs[j][i]));
  o.plot_header = "j,y,a";
  inconclusive = r.verdict == SilpVerdict::inconclusive;
  o.pass = r.verdict == SilpVerdict::certified_on_grid;
  finish(o);
  if (inconclusive) o.report["status"] = "inconclusive";
  return o;
}

Outcome check_dual_feasibility(const Common& c, const CheckArgs& a) {
  const double tol = tolerance(c, 1e-9);
  const Lattice lattice = load_lattice(a.lattice.empty() ? "e8" : a.lattice, a.scale.empty() ? "1/2" : a.scale);
  const int n = lattice.dimension();
  std::vector<RadialFunction> tests;
  for (const auto& t : split(a.tests, ',')) {
    if (t == "gaussian") {
      tests.push_back(gaussian(n, a.gauss_s));
    } else if (t == "autocorr") {
      tests.push_back(autocorr_fn(n, 1.0));
    } else {
      throw ConfigError("dual-feasibility tests: gaussian, autocorr");
    }
  }
  if (tests.empty()) throw ConfigError("no test functions");
  const DualFeasibilityReport r = dual_feasibility(lattice, tests);
  Outcome o;
  o.report = header("check dual-feasibility", tol);
  o.report["lattice"] = lattice.name();
  o.report["c"] = real(r.c);
  o.report["min_norm"] = to_string(r.min_norm);
  o.report["margin"] = real(r.margin);
  Json rows = Json::array();
  for (std::size_t i = 0; i < r.tests.size(); ++i) rows.push_back({{"test", r.tests[i]}, {"slack", real(r.slacks[i])}});
  o.report["tests"] = rows;
  o.pass = r.margin >= -tol;
  finish(o);
  return o;
}

void write_plot(const Outcome& o, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write plot data to '" + path + "'");
  out << o.plot_header << '\n';
  for (const auto& [x, y] : o.plot) out << x << ',' << y << '\n';
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear-programming sphere packing bounds, lattice theta series and Laguerre positivity checks",
               "lpsphere"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--output", common.output, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--tol", common.tol, "Tolerance (overrides LP_SPHERE_TOL)");
  app.add_option("--seed", common.seed, "Seed for randomized sweeps");
  app.add_option("--emit-plot-data", common.plot_path, "Write (x, y) CSV for plotting to this file");

  std::string dims = "1..8";
  auto* bound = app.add_subcommand("bound", "Closed-form density bounds per dimension");
  bound->add_option("--dims", dims, "Dimension or range a..b (1..36)");

  std::string series;
  int K = 25;
  auto* theta = app.add_subcommand("theta", "Exact q-expansions: e8, leech, theta72");
  theta->add_option("name", series, "Series name")->required();
  theta->add_option("--K", K, "Truncation index (coefficients up to q^K, norm 2K)");

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "Identity and positivity checks");
  check->require_subcommand(1);
  check->fallthrough();
  const std::vector<std::pair<std::string, std::string>> kinds{
      {"quadrature", "Band-limited quadrature against the exact transform at 0"},
      {"dini", "Recover the transform on a ball from node samples"},
      {"poisson", "Poisson summation residual for Gaussians on a lattice"},
      {"theta-transform", "Theta inversion residual"},
      {"thetacoeff", "Shell counts against exact theta coefficients"},
      {"silp", "Laguerre coefficient sign checks (exp, omega, product-sweep)"},
      {"dual-feasibility", "Lattice as a feasible point of the dual program"}};
  for (const auto& [kind, about] : kinds) {
    auto* sub = check->add_subcommand(kind, about);
    sub->add_option("--dim,--dims", ca.dims, "Dimension or range a..b");
    sub->add_option("--r", ca.radii, "Band radius list");
    sub->add_option("--nodes", ca.nodes, "Node count M");
    sub->add_option("--function", ca.function, "Test function");
    sub->add_option("--u", ca.u, "Interpolation points in [0, 1)");
    sub->add_option("--lattice", ca.lattice, "Built-in name(s) or lattice file");
    sub->add_option("--scale", ca.scale, "Rational Gram scale factor");
    sub->add_option("--shift", ca.shift, "Comma-separated rational shift vector");
    sub->add_option("--s", ca.gauss_s, "Gaussian scale in exp(-pi s r^2)");
    sub->add_option("--y", ca.y, "Comma-separated y values (pi allowed)");
    sub->add_option("--kmax", ca.kmax, "Largest Laguerre index");
    sub->add_option("--alpha", ca.alpha, "Laguerre order (half-integer)");
    sub->add_option("--jmax", ca.jmax, "Largest coefficient index");
    sub->add_option("--c", ca.c, "Kernel scale for omega");
    sub->add_option("--pairs", ca.pairs, "Random pairs in product-sweep");
    sub->add_option("--tests", ca.tests, "Dual-feasibility test functions");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidConfig;
  }

  try {
    Outcome o;
    bool inconclusive = false;
    if (bound->parsed()) {
      o = cmd_bound(common, dims);
    } else if (theta->parsed()) {
      o = cmd_theta(common, series, K);
    } else {
      const std::string kind = check->get_subcommands().front()->get_name();
      if (kind == "quadrature") o = check_quadrature(common, ca);
      if (kind == "dini") o = check_dini(common, ca);
      if (kind == "poisson") o = check_poisson(common, ca);
      if (kind == "theta-transform") o = check_theta_transform(common, ca);
      if (kind == "thetacoeff") o = check_thetacoeff(common, ca);
      if (kind == "silp") o = check_silp(common, ca, inconclusive);
      if (kind == "dual-feasibility") o = check_dual_feasibility(common, ca);
    }
    if (common.output == "csv" && !o.csv.empty()) {
      out << o.csv;
    } else if (common.output == "text" && !o.text.empty()) {
      out << o.text;
    } else {
      out << o.report.dump(2) << '\n';
    }
    if (!common.plot_path.empty()) write_plot(o, common.plot_path);
    if (inconclusive && o.pass) return kAccuracy;
    if (!o.pass) err << "check failed: see report\n";
    return o.pass ? kOk : (inconclusive ? kAccuracy : kViolation);
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const PreconditionError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const DomainError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const AccuracyError& e) {
    err << "accuracy error: " << e.what() << " (partial " << format_real(e.partial()) << ", error estimate "
        << format_real(e.est_error()) << ")\n";
    return kAccuracy;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "; completed: " << e.completed() << '\n';
    return kAccuracy;
  }
}

}  // namespace lpsphere::cli
