#include "fbvp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fbvp/error.hpp"
#include "fbvp/special.hpp"

namespace fbvp {

namespace {

void require_nonnegative(const Eigen::MatrixXd& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError(std::string(who) + ": matrix must be square and nonempty");
  }
  if ((m.array() < 0.0).any()) {
    throw ValidationError(std::string(who) + ": matrix must be nonnegative");
  }
}

}  // namespace

// Both bounds integrate g against a weight in s. Swapping the order of
// integration leaves a smooth integrand in t against the measure, with the
// inner s-integrals in closed form.

double tau1(const KernelContext& ctx) {
  ctx.require_admissible();
  const auto& spec = ctx.spec();
  const double alpha = ctx.alpha();
  const double a1 = alpha - 1.0;
  const double lam = ctx.lambda();
  const double ga = ctx.gamma_alpha();
  const double b2 = 1.0 / (alpha * (alpha + 1.0));  // B(2, alpha)
  const double ba = ga * ga / gamma_fn(2.0 * alpha);  // B(alpha, alpha)
  // int_0^1 (s - s^(alpha-1)) G(t,s) ds
  const auto inner = [&](double t) {
    return (t * (b2 - ba) - b2 * std::pow(t, alpha + 1.0) + ba * std::pow(t, 2.0 * alpha - 1.0)) / ga;
  };
  double integral = (spec.mu() - lam + 1.0) * (b2 - ba) / ga;
  if (spec.beta() != 0.0 && !spec.measure().empty()) {
    integral += spec.beta() * spec.measure().integrate(inner);
  }
  const double eta = spec.eta();
  return (eta - std::pow(eta, a1)) / (1.0 - lam) * integral;
}

double tau2(const KernelContext& ctx) {
  ctx.require_admissible();
  const auto& spec = ctx.spec();
  const double alpha = ctx.alpha();
  const double lam = ctx.lambda();
  const double ga1 = gamma_fn(alpha + 1.0);
  double g_integral = 0.0;
  if (spec.beta() != 0.0 && !spec.measure().empty()) {
    g_integral = spec.measure().integrate([&](double t) { return (t - std::pow(t, alpha)) / ga1; });
  }
  return (spec.beta() * g_integral + (spec.mu() - lam + 1.0) / ga1) / (1.0 - lam);
}

NystromSystem nystrom_system(const KernelContext& ctx, int n) {
  ctx.require_admissible();
  if (n < 8) throw ValidationError("nystrom: need at least 8 nodes");
  NystromSystem sys;
  sys.rule = QuadratureRule::with_total_nodes(0.0, 1.0, ctx.breakpoints(), ctx.quad().order, n);
  const auto& s = sys.rule.nodes();
  const auto& w = sys.rule.weights();
  const auto& spec = ctx.spec();
  const double inv = 1.0 / (1.0 - ctx.lambda());

  // t-independent part of H(t, s_j), then the G(t, s_j) term per row.
  std::vector<double> boundary(n);
  for (int j = 0; j < n; ++j) {
    boundary[j] = inv * (spec.beta() * ctx.g(s[j]) + spec.mu() * ctx.green(spec.eta(), s[j]));
  }
  sys.matrix.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      sys.matrix(i, j) = (s[i] * boundary[j] + ctx.green(s[i], s[j])) * w[j];
    }
  }
  return sys;
}

Eigen::MatrixXd nystrom_matrix(const KernelContext& ctx, int n) {
  return nystrom_system(ctx, n).matrix;
}

PowerResult power_iteration(const Eigen::MatrixXd& m, double tol, int max_iter) {
  require_nonnegative(m, "power_iteration");
  if (!(tol > 0.0) || max_iter < 1) {
    throw ValidationError("power_iteration: need tol > 0 and max_iter >= 1");
  }
  PowerResult out;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(m.rows());
  double r_prev = -1.0;
  for (int k = 1; k <= max_iter; ++k) {
    const Eigen::VectorXd w = m * v;
    const double r = w.maxCoeff();
    if (r == 0.0) {
      // Nilpotent on the start vector: report the trivial pair.
      out.r = 0.0;
      out.v = Eigen::VectorXd::Ones(m.rows());
      out.residual = (m * out.v).cwiseAbs().maxCoeff();
      out.iterations = k;
      return out;
    }
    const double residual = (w - r * v).cwiseAbs().maxCoeff();
    out.r = r;
    out.v = v;
    out.residual = residual;
    out.iterations = k;
    if (residual <= tol && std::abs(r - r_prev) <= tol) return out;
    r_prev = r;
    v = w / r;
  }
  std::ostringstream msg;
  msg.precision(6);
  msg << "power_iteration: no convergence after " << max_iter << " iterations (residual "
      << out.residual << ")";
  throw ConvergenceError(msg.str(), out.r, out.residual);
}

std::vector<double> gelfand_check(const Eigen::MatrixXd& m, int n_max) {
  require_nonnegative(m, "gelfand_check");
  if (n_max < 1) throw ValidationError("gelfand_check: n_max must be >= 1");
  std::vector<double> values;
  values.reserve(n_max);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(m.rows());
  double mantissa = 1.0;  // ‖M^k‖ = mantissa · 2^exponent
  long exponent = 0;
  bool vanished = false;
  for (int k = 1; k <= n_max; ++k) {
    if (!vanished) {
      x = m * x;
      const double norm = x.maxCoeff();
      if (norm == 0.0) {
        vanished = true;
      } else {
        x /= norm;
        int e = 0;
        mantissa = std::frexp(mantissa * norm, &e);
        exponent += e;
      }
    }
    if (vanished) {
      values.push_back(0.0);
      continue;
    }
    const double kd = static_cast<double>(k);
    values.push_back(std::pow(mantissa, 1.0 / kd) * std::exp2(static_cast<double>(exponent) / kd));
  }
  return values;
}

SpectralBounds scale_radius(double a, const SpectralBounds& bounds) {
  if (!(a > 0.0)) throw ValidationError("scale_radius: a must be positive");
  SpectralBounds out = bounds;
  out.tau1 *= a;
  out.tau2 *= a;
  out.r_estimate *= a;
  out.residual *= a;
  return out;
}

SpectralBounds analyze_spectrum(const KernelContext& ctx, int n, double tol, int max_iter) {
  SpectralBounds out;
  out.tau1 = tau1(ctx);
  out.tau2 = tau2(ctx);
  const NystromSystem sys = nystrom_system(ctx, n);
  const PowerResult pr = power_iteration(sys.matrix, tol, max_iter);
  out.r_estimate = pr.r;
  out.residual = pr.residual;
  out.n_nodes = n;
  out.degenerate = pr.r == 0.0;

  std::vector<double> nodes{0.0};
  nodes.insert(nodes.end(), sys.rule.nodes().begin(), sys.rule.nodes().end());
  nodes.push_back(1.0);
  std::vector<double> values(nodes.size(), 1.0);
  if (!out.degenerate) {
    // Nyström interpolant φ(t) = Σ H(t,s_j) w_j v_j / r.
    const auto& spec = ctx.spec();
    const auto& s = sys.rule.nodes();
    const auto& w = sys.rule.weights();
    const double inv = 1.0 / (1.0 - ctx.lambda());
    double boundary_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      boundary_sum += inv * (spec.beta() * ctx.g(s[j]) + spec.mu() * ctx.green(spec.eta(), s[j])) *
                      w[j] * pr.v[j];
    }
    double peak = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double t = nodes[i];
      double sum = t * boundary_sum;
      for (int j = 0; j < n; ++j) sum += ctx.green(t, s[j]) * w[j] * pr.v[j];
      values[i] = std::max(0.0, sum / pr.r);
      peak = std::max(peak, values[i]);
    }
    for (double& v : values) v /= peak;
  }
  out.eigenfunction = GridFunction(std::move(nodes), std::move(values), 3);
  return out;
}

SandwichCheck sandwich_check(const KernelContext& ctx, int n) {
  SandwichCheck c;
  const SpectralBounds coarse = analyze_spectrum(ctx, n);
  c.tau1 = coarse.tau1;
  c.tau2 = coarse.tau2;
  c.r_coarse = coarse.r_estimate;
  c.r_fine = power_iteration(nystrom_matrix(ctx, 2 * n), 1e-13, 20000).r;
  c.epsilon = std::max(1e-6, std::abs(c.r_fine - c.r_coarse));
  c.holds = c.tau1 - c.epsilon <= c.r_coarse && c.r_coarse <= c.tau2 + c.epsilon;
  return c;
}

}  // namespace fbvp
