#include "fbvp/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <sstream>

#include "fbvp/error.hpp"
#include "fbvp/expr.hpp"
#include "fbvp/quadrature.hpp"
#include "fbvp/solver.hpp"
#include "fbvp/special.hpp"
#include "fbvp/spectral.hpp"

namespace fbvp {

namespace {

constexpr double kSlack = 1e-12;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double random_alpha(std::mt19937_64& rng) {
  return uniform(rng, std::nextafter(2.0, 3.0), std::nextafter(3.0, 4.0));
}

SuiteResult start_suite(const char* name, int cases) {
  SuiteResult r;
  r.name = name;
  r.cases = cases;
  return r;
}

// Records one inequality check `slack >= -tolerance`.
void record(SuiteResult& r, double slack, double tolerance, const std::string& what) {
  ++r.checks;
  r.worst = std::min(r.worst, slack);
  if (!(slack >= -tolerance)) {
    if (r.failures == 0) r.detail = what;
    ++r.failures;
  }
}

std::string describe(const char* label, std::initializer_list<double> values) {
  std::ostringstream out;
  out.precision(17);
  out << label;
  for (double v : values) out << ' ' << v;
  return out.str();
}

struct Poly {
  std::vector<double> c;
  double operator()(double x) const {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  double antiderivative(double x) const {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k] / static_cast<double>(k + 1);
    return acc * x;
  }
};

Poly random_poly(std::mt19937_64& rng, int degree) {
  Poly p;
  for (int k = 0; k <= degree; ++k) p.c.push_back(uniform(rng, -1.0, 1.0));
  return p;
}

SignedMeasure random_measure(std::mt19937_64& rng, bool signed_weights) {
  std::vector<double> locations;
  const int count = uniform_int(rng, 0, 4);
  for (int i = 0; i < count; ++i) locations.push_back(uniform(rng, 0.0, 1.0));
  std::sort(locations.begin(), locations.end());
  locations.erase(std::unique(locations.begin(), locations.end()), locations.end());
  std::vector<Atom> atoms;
  for (double loc : locations) {
    double w = uniform(rng, 0.1, 2.0);
    if (signed_weights && uniform(rng, 0.0, 1.0) < 0.5) w = -w;
    atoms.push_back({loc, w});
  }
  std::optional<Density> density;
  if (uniform(rng, 0.0, 1.0) < 0.5) {
    const double c0 = uniform(rng, signed_weights ? -1.0 : 0.0, 1.0);
    const double c1 = uniform(rng, signed_weights ? -1.0 : 0.0, 1.0);
    const double bp = uniform(rng, 0.1, 0.9);
    // Piecewise linear with a kink at bp.
    density = Density{[=](double t) { return c0 + c1 * std::abs(t - bp); }, {bp},
                      describe("c0 + c1|t-bp|", {c0, c1, bp})};
  }
  return SignedMeasure(std::move(atoms), std::move(density));
}

std::string random_expression(std::mt19937_64& rng, int depth) {
  auto number = [&] {
    char buf[40];
    switch (uniform_int(rng, 0, 2)) {
      case 0: std::snprintf(buf, sizeof buf, "%d", uniform_int(rng, 0, 9)); break;
      case 1: std::snprintf(buf, sizeof buf, "%.17g", uniform(rng, 0.0, 4.0)); break;
      default: std::snprintf(buf, sizeof buf, "%.6e", uniform(rng, 1e-6, 1e3)); break;
    }
    return std::string(buf);
  };
  if (depth <= 0 || uniform(rng, 0.0, 1.0) < 0.25) {
    switch (uniform_int(rng, 0, 2)) {
      case 0: return "t";
      case 1: return "u";
      default: return number();
    }
  }
  const std::string a = random_expression(rng, depth - 1);
  const std::string b = random_expression(rng, depth - 1);
  switch (uniform_int(rng, 0, 11)) {
    case 0: return a + " + " + b;
    case 1: return a + " - " + b;
    case 2: return a + "*" + b;
    case 3: return "(" + a + ")/(" + b + ")";
    case 4: return "-" + a;
    case 5: return "exp(" + a + "/8)";
    case 6: return "sin(" + a + ")";
    case 7: return "cos(" + a + ") * (" + b + ")";
    case 8: return "(" + a + ")^2";
    case 9: return "sqrt(abs(" + a + "))";
    case 10: return "pow(abs(" + a + "), " + number() + ")";
    default: return "2^-(" + a + ")^2";
  }
}

}  // namespace

ProblemSpec five_point_spec(const QuadSettings& quad) {
  SignedMeasure measure({{3.0 / 7.0, 2.0}, {4.0 / 7.0, -1.0}}, std::nullopt, quad);
  Nonlinearity f{[](double t, double u) { return 1.0 - t + std::exp(t / 4.0 - u); },
                 "1 - t + exp(t/4 - u)"};
  return ProblemSpec(2.5, 2.0, 1.0 / 7.0, 1.0, std::move(measure), std::move(f));
}

ProblemSpec random_admissible_spec(std::mt19937_64& rng, const QuadSettings& quad) {
  const double alpha = random_alpha(rng);
  const double eta = uniform(rng, 0.05, 0.95);
  double mu = uniform(rng, 0.0, 1.5);
  double beta = uniform(rng, 0.0, 1.5);

  std::vector<double> locations;
  const int count = uniform_int(rng, 0, 3);
  for (int i = 0; i < count; ++i) locations.push_back(uniform(rng, 0.0, 1.0));
  std::sort(locations.begin(), locations.end());
  locations.erase(std::unique(locations.begin(), locations.end()), locations.end());
  std::vector<Atom> atoms;
  for (double loc : locations) atoms.push_back({loc, uniform(rng, 0.1, 1.0)});
  std::optional<Density> density;
  if (uniform(rng, 0.0, 1.0) < 0.3) {
    const double c0 = uniform(rng, 0.0, 1.0);
    const double c1 = uniform(rng, 0.0, 1.0);
    density = Density{[=](double t) { return c0 + c1 * t; }, {}, describe("c0 + c1 t", {c0, c1})};
  }
  SignedMeasure measure(std::move(atoms), std::move(density), quad);

  const double gamma_t = rs_integral([](double t) { return t; }, measure);
  const double lambda = mu * eta + beta * gamma_t;
  if (lambda >= 0.9) {
    const double scale = uniform(rng, 0.1, 0.9) / lambda;
    mu *= scale;
    beta *= scale;
  }
  return ProblemSpec(alpha, mu, eta, beta, std::move(measure));
}

SuiteResult suite_quadrature_exactness(int cases, std::mt19937_64& rng) {
  SuiteResult r = start_suite("quadrature-exactness", cases);
  for (int c = 0; c < cases; ++c) {
    const int order = uniform_int(rng, 1, 12);
    const Poly p = random_poly(rng, 2 * order - 1);
    const double a = uniform(rng, 0.0, 0.5);
    const double b = uniform(rng, 0.5, 1.0);
    const double bp = uniform(rng, a, b);
    const double exact = p.antiderivative(b) - p.antiderivative(a);
    const double bps[] = {bp};
    const double one_panel = integrate(p, a, b, {}, order, 1);
    const double split = integrate(p, a, b, bps, order, 3);
    const double tol = 1e-13 * (1.0 + std::abs(exact));
    record(r, -std::abs(one_panel - exact), tol, describe("exactness order/a/b", {double(order), a, b}));
    record(r, -std::abs(split - exact), tol, describe("split exactness order/bp", {double(order), bp}));
  }
  return r;
}

SuiteResult suite_measure_properties(int cases, std::mt19937_64& rng) {
  SuiteResult r = start_suite("measure-properties", cases);
  for (int c = 0; c < cases; ++c) {
    const SignedMeasure m = random_measure(rng, true);
    const Poly phi = random_poly(rng, 4);
    const Poly psi = random_poly(rng, 4);
    const double a = uniform(rng, -2.0, 2.0);
    const double b = uniform(rng, -2.0, 2.0);
    const double lhs = rs_integral([&](double t) { return a * phi(t) + b * psi(t); }, m);
    const double rhs = a * rs_integral(phi, m) + b * rs_integral(psi, m);
    record(r, -std::abs(lhs - rhs), 1e-12, "linearity");

    double mass = 0.0;
    for (const Atom& atom : m.atoms()) mass += atom.weight;
    if (m.density()) {
      mass += refine_until(m.density()->fn, 0.0, 1.0, m.density()->breakpoints, 1e-13).value;
    }
    record(r, -std::abs(rs_integral([](double) { return 1.0; }, m) - mass), 1e-12, "mass");

    double sup = 0.0;
    for (int k = 0; k <= 2000; ++k) sup = std::max(sup, std::abs(phi(k / 2000.0)));
    for (const Atom& atom : m.atoms()) sup = std::max(sup, std::abs(phi(atom.location)));
    // The sampled sup can undershoot the true sup slightly; allow for it.
    record(r, sup * total_variation(m) * (1.0 + 1e-6) - std::abs(rs_integral(phi, m)), kSlack,
           "total variation bound");

    if (m.atom_only()) {
      double direct = 0.0;
      for (const Atom& atom : m.atoms()) direct += atom.weight * phi(atom.location);
      record(r, -std::abs(rs_integral(phi, m) - direct), 0.0, "atom-only exactness");
    }
  }
  return r;
}

SuiteResult suite_green_bounds(int cases, std::mt19937_64& rng) {
  SuiteResult r = start_suite("green-bounds", cases);
  for (int c = 0; c < cases; ++c) {
    const double alpha = random_alpha(rng);
    const double ga = gamma_fn(alpha);
    for (int k = 0; k < 100; ++k) {
      double t = uniform(rng, 0.0, 1.0);
      double s = uniform(rng, 0.0, 1.0);
      if (k == 0) t = 0.0;
      if (k == 1) t = 1.0;
      if (k == 2) s = 0.0;
      if (k == 3) s = 1.0;
      if (k == 4) s = t;
      const double g = green_g(t, s, alpha);
      const double ps = psi(s, alpha);
      const double lower = (t - std::pow(t, alpha - 1.0)) * ps;
      const auto where = describe("alpha/t/s", {alpha, t, s});
      record(r, g, kSlack, "G >= 0 at " + where);
      record(r, g - lower, kSlack, "G >= (t - t^(a-1)) Psi at " + where);
      record(r, ps - g, kSlack, "G <= Psi at " + where);
    }
    // Both branches of G agree on the diagonal.
    const double d = uniform(rng, 0.0, 1.0);
    const double below = (d * std::pow(1.0 - d, alpha - 1.0) - std::pow(d - d, alpha - 1.0)) / ga;
    const double above = d * std::pow(1.0 - d, alpha - 1.0) / ga;
    record(r, -std::abs(below - above), kSlack, describe("continuity at s=t", {alpha, d}));
  }
  return r;
}

SuiteResult suite_kernel_bounds(int cases, std::mt19937_64& rng) {
  SuiteResult r = start_suite("kernel-bounds", cases);
  for (int c = 0; c < cases; ++c) {
    const ProblemSpec spec = c == 0 ? five_point_spec() : random_admissible_spec(rng);
    const KernelContext ctx(spec, {}, 65);
    for (int k = 0; k < 100; ++k) {
      const double t = uniform(rng, 0.0, 1.0);
      const double s = uniform(rng, 0.0, 1.0);
      const double h = kernel_h(ctx, t, s);
      const double phi = bound_phi(ctx, s);
      const double rho = bound_rho(ctx, t);
      const auto where = describe("spec/t/s", {double(c), t, s});
      record(r, h, kSlack, "H >= 0 at " + where);
      record(r, h - rho * phi, kSlack, "H >= rho Phi at " + where);
      record(r, phi - h, kSlack, "H <= Phi at " + where);
    }
  }
  return r;
}

SuiteResult suite_rho_max(int cases, std::mt19937_64& rng) {
  SuiteResult r = start_suite("rho-max", cases);
  for (int c = 0; c < cases; ++c) {
    const double alpha = random_alpha(rng);
    const double peak = rho_max(alpha);
    for (int k = 0; k < 10; ++k) {
      const double t = uniform(rng, 0.0, 1.0);
      record(r, peak - (t - std::pow(t, alpha - 1.0)), 1e-15, describe("rho_max dominance", {alpha, t}));
    }
    const double ts = rho_argmax(alpha);
    record(r, -std::abs(peak - (ts - std::pow(ts, alpha - 1.0))), 1e-10,
           describe("rho_max attained", {alpha}));
  }
  return r;
}

SuiteResult suite_expression_roundtrip(int cases, std::mt19937_64& rng) {
  SuiteResult r = start_suite("expr-roundtrip", cases);
  for (int c = 0; c < cases; ++c) {
    const std::string src = random_expression(rng, 4);
    const Expression e = parse(src, {"t", "u"});
    const Expression back = parse(e.to_string(), {"t", "u"});
    for (int k = 0; k < 10; ++k) {
      Bindings b;
      b.set(Var::t, uniform(rng, 0.0, 1.0)).set(Var::u, uniform(rng, -3.0, 3.0));
      bool e_threw = false;
      bool back_threw = false;
      double ve = 0.0;
      double vb = 0.0;
      try {
        ve = e.evaluate(b);
      } catch (const DomainError&) {
        e_threw = true;
      }
      try {
        vb = back.evaluate(b);
      } catch (const DomainError&) {
        back_threw = true;
      }
      const bool same = e_threw == back_threw && (e_threw || std::memcmp(&ve, &vb, sizeof ve) == 0);
      record(r, same ? 0.0 : -1.0, 0.0, "round trip of '" + src + "'");
    }
  }
  return r;
}

SuiteResult suite_spectral_sandwich(int cases, std::mt19937_64& rng) {
  SuiteResult r = start_suite("spectral-sandwich", cases);
  for (int c = 0; c < cases; ++c) {
    const ProblemSpec spec = c == 0 ? five_point_spec() : random_admissible_spec(rng);
    const KernelContext ctx(spec, {}, 65);
    const SandwichCheck sw = sandwich_check(ctx, 256);
    const auto where = describe("spec/tau1/r/tau2/eps", {double(c), sw.tau1, sw.r_coarse, sw.tau2, sw.epsilon});
    record(r, sw.r_coarse - (sw.tau1 - sw.epsilon), 0.0, "tau1 <= r at " + where);
    record(r, (sw.tau2 + sw.epsilon) - sw.r_coarse, 0.0, "r <= tau2 at " + where);
    const auto gelfand = gelfand_check(nystrom_matrix(ctx, 256), 32);
    for (double g : gelfand) record(r, g - (sw.r_coarse - 1e-6), 0.0, "Gelfand term >= r at " + where);
  }
  return r;
}

SuiteResult suite_linear_solver(int cases, std::mt19937_64& rng) {
  SuiteResult r = start_suite("linear-solver", cases);
  for (int c = 0; c < cases; ++c) {
    const ProblemSpec spec = c == 0 ? five_point_spec() : random_admissible_spec(rng);
    const KernelContext ctx(spec, {}, 65);
    const double alpha = spec.alpha();
    const double lam = ctx.lambda();

    // h ≡ Γ(α+1) has the closed-form solution t - t^α + C t.
    const double forcing = gamma_fn(alpha + 1.0);
    const double gamma_t = spec.measure().integrate([](double t) { return t; });
    const double gamma_ta = spec.measure().integrate([&](double t) { return std::pow(t, alpha); });
    const double big_c = (spec.mu() * (spec.eta() - std::pow(spec.eta(), alpha)) +
                          spec.beta() * (gamma_t - gamma_ta)) / (1.0 - lam);
    const GridFunction u = solve_linear(ctx, [&](double) { return forcing; });
    double err = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double t = u.nodes()[i];
      err = std::max(err, std::abs(u.values()[i] - (t - std::pow(t, alpha) + big_c * t)));
    }
    record(r, -err, 1e-6, describe("closed-form linear solution error", {double(c), err}));

    const Poly h1 = random_poly(rng, 3);
    const Poly h2 = random_poly(rng, 3);
    const GridFunction u1 = solve_linear(ctx, h1);
    const GridFunction u2 = solve_linear(ctx, h2);
    const GridFunction u12 = solve_linear(ctx, [&](double s) { return h1(s) + h2(s); });
    double lin = 0.0;
    for (std::size_t i = 0; i < u12.size(); ++i) {
      lin = std::max(lin, std::abs(u12.values()[i] - u1.values()[i] - u2.values()[i]));
    }
    record(r, -lin, 1e-10, describe("linearity of solve_linear", {double(c), lin}));

    const IntegralOperator op(ctx, solution_nodes(ctx, 129));
    std::vector<double> vals(op.nodes().size());
    for (double& v : vals) v = uniform(rng, 0.0, 2.0);
    const Nonlinearity f{[](double t, double x) { return std::abs(x) * (1.0 + t) + 0.1 * t; }, ""};
    const auto au = op.apply(f, vals);
    record(r, *std::min_element(au.begin(), au.end()), kSlack, describe("positivity of A", {double(c)}));
  }
  return r;
}

std::vector<SuiteResult> run_selftest(int cases, std::uint64_t seed) {
  if (cases < 1) throw ValidationError("selftest: cases must be >= 1");
  using Suite = std::function<SuiteResult(int, std::mt19937_64&)>;
  const std::vector<std::pair<Suite, int>> suites = {
      {suite_quadrature_exactness, cases},
      {suite_measure_properties, cases},
      {suite_green_bounds, cases},
      {suite_kernel_bounds, cases},
      {suite_rho_max, cases},
      {suite_expression_roundtrip, cases},
      {suite_spectral_sandwich, std::max(2, cases / 5)},
      {suite_linear_solver, std::max(2, cases / 10)},
  };
  std::vector<SuiteResult> results;
  for (std::size_t i = 0; i < suites.size(); ++i) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * (i + 1));
    results.push_back(suites[i].first(suites[i].second, rng));
  }
  return results;
}

}  // namespace fbvp
