#include "fbvp/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "fbvp/error.hpp"
#include "fbvp/special.hpp"

namespace fbvp {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 2.0 && alpha <= 3.0)) throw DomainError("alpha must lie in (2,3]");
}

void check_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string(name) + " must lie in [0,1]");
}

// Γ(α)·G(t,s).
double green_scaled(double t, double s, double alpha) {
  const double value = t * std::pow(1.0 - s, alpha - 1.0);
  if (s <= t) return value - std::pow(t - s, alpha - 1.0);
  return value;
}

}  // namespace

ProblemSpec::ProblemSpec(double alpha, double mu, double eta, double beta, SignedMeasure measure,
                         Nonlinearity f)
    : alpha_(alpha), mu_(mu), eta_(eta), beta_(beta), measure_(std::move(measure)), f_(std::move(f)) {
  if (!(alpha > 2.0 && alpha <= 3.0)) throw ValidationError("alpha must lie in (2,3]");
  if (!(eta > 0.0 && eta < 1.0)) throw ValidationError("eta must lie in (0,1)");
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw ValidationError("mu must be finite and >= 0");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ValidationError("beta must be finite and >= 0");
  lambda_ = lambda_const(*this);
}

double lambda_const(const ProblemSpec& spec) {
  const double gamma_t = rs_integral([](double t) { return t; }, spec.measure());
  return spec.mu() * spec.eta() + spec.beta() * gamma_t;
}

double green_g(double t, double s, double alpha) {
  check_unit(t, "t");
  check_unit(s, "s");
  check_alpha(alpha);
  return green_scaled(t, s, alpha) / gamma_fn(alpha);
}

double psi(double s, double alpha) {
  check_unit(s, "s");
  check_alpha(alpha);
  return std::pow(1.0 - s, alpha - 1.0) / gamma_fn(alpha);
}

double rho_max(double alpha) {
  check_alpha(alpha);
  return (alpha - 2.0) / std::pow(alpha - 1.0, (alpha - 1.0) / (alpha - 2.0));
}

double rho_argmax(double alpha) {
  check_alpha(alpha);
  return std::pow(alpha - 1.0, -1.0 / (alpha - 2.0));
}

KernelContext::KernelContext(ProblemSpec spec, QuadSettings quad, int table_size)
    : spec_(std::move(spec)), quad_(quad), gamma_alpha_(gamma_fn(spec_.alpha())) {
  breakpoints_ = spec_.measure().breakpoints();
  breakpoints_.push_back(spec_.eta());
  std::sort(breakpoints_.begin(), breakpoints_.end());
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());

  if (const auto& density = spec_.measure().density()) {
    const SignedMeasure part({}, density, spec_.measure().quad());
    density_moment_ = part.integrate([](double t) { return t; });
  }

  auto nodes = clustered_nodes(table_size, breakpoints_);
  std::vector<double> values(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) values[i] = g_exact(nodes[i]);
  g_table_ = GridFunction(std::move(nodes), std::move(values), 3);
}

void KernelContext::require_admissible() const {
  if (!admissible()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "hypothesis H1 violated: Lambda = " << lambda() << " is not in [0,1)";
    throw HypothesisError(msg.str());
  }
}

double KernelContext::green(double t, double s) const {
  return green_scaled(t, s, spec_.alpha()) / gamma_alpha_;
}

double KernelContext::psi(double s) const {
  return std::pow(1.0 - s, spec_.alpha() - 1.0) / gamma_alpha_;
}

double KernelContext::g_exact(double s) const {
  const auto& measure = spec_.measure();
  double sum = 0.0;
  for (const Atom& atom : measure.atoms()) sum += atom.weight * green(atom.location, s);
  const auto& density = measure.density();
  if (!density || s >= 1.0) return sum;
  // The (t-s)^(alpha-1) piece, with t = s + (1-s) x^2 to smooth the endpoint at t = s.
  const double alpha = spec_.alpha();
  const double len = 1.0 - s;
  std::vector<double> mapped;
  for (double b : density->breakpoints) {
    if (b > s && b < 1.0) mapped.push_back(std::sqrt((b - s) / len));
  }
  const double tail = integrate(
      [&](double x) { return std::pow(x, 2.0 * alpha - 1.0) * density->fn(s + len * x * x); }, 0.0,
      1.0, mapped, measure.quad().order, measure.quad().panels);
  return sum + (std::pow(len, alpha - 1.0) * density_moment_ - 2.0 * std::pow(len, alpha) * tail) /
                   gamma_alpha_;
}

double KernelContext::g(double s) const {
  if (spec_.measure().atom_only()) return g_exact(s);
  const auto& nodes = g_table_.nodes();
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), s);
  if (it != nodes.end() && *it == s) return g_table_.values()[it - nodes.begin()];
  return g_exact(s);
}

double g_weight(const KernelContext& ctx, double s) {
  check_unit(s, "s");
  return ctx.g(s);
}

double kernel_h(const KernelContext& ctx, double t, double s) {
  ctx.require_admissible();
  check_unit(t, "t");
  check_unit(s, "s");
  const auto& spec = ctx.spec();
  const double scale = t / (1.0 - ctx.lambda());
  return scale * (spec.beta() * ctx.g(s) + spec.mu() * ctx.green(spec.eta(), s)) + ctx.green(t, s);
}

double bound_phi(const KernelContext& ctx, double s) {
  ctx.require_admissible();
  check_unit(s, "s");
  const auto& spec = ctx.spec();
  const double lam = ctx.lambda();
  return (spec.beta() * ctx.g(s) + (spec.mu() - lam + 1.0) * ctx.psi(s)) / (1.0 - lam);
}

double bound_rho(const KernelContext& ctx, double t) {
  ctx.require_admissible();
  check_unit(t, "t");
  const double a1 = ctx.alpha() - 1.0;
  const double eta = ctx.spec().eta();
  return (eta - std::pow(eta, a1)) * (t - std::pow(t, a1));
}

HypothesisReport check_hypotheses(const KernelContext& ctx, int grid_size, double tol) {
  if (grid_size < 2) throw ValidationError("check_hypotheses: grid size must be at least 2");
  HypothesisReport report;
  report.lambda = ctx.lambda();
  report.h1 = ctx.admissible();
  report.grid_size = grid_size;
  report.tolerance = tol;

  std::vector<double> points(ctx.breakpoints());
  for (int i = 0; i < grid_size; ++i) points.push_back(static_cast<double>(i) / (grid_size - 1));
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  report.points_checked = points.size();

  report.g_min = ctx.g(points.front());
  report.g_min_at = points.front();
  for (double s : points) {
    const double g = ctx.g(s);
    if (g < report.g_min) {
      report.g_min = g;
      report.g_min_at = s;
    }
    if (g < -tol) report.violations.push_back(s);
  }
  report.h2 = report.violations.empty();
  return report;
}

}  // namespace fbvp
