#include "fbvp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fbvp/error.hpp"

namespace fbvp {

std::vector<double> solution_nodes(const KernelContext& ctx, int grid) {
  return clustered_nodes(grid, ctx.breakpoints());
}

IntegralOperator::IntegralOperator(const KernelContext& ctx, std::vector<double> nodes, int degree) {
  ctx.require_admissible();
  std::vector<double> zeros(nodes.size(), 0.0);
  grid_ = GridFunction(std::move(nodes), std::move(zeros), degree);

  const auto& spec = ctx.spec();
  const auto& quad = ctx.quad();
  const double inv = 1.0 / (1.0 - ctx.lambda());

  const QuadratureRule base(0.0, 1.0, ctx.breakpoints(), quad.order, quad.panels);
  boundary_samples_.reserve(base.size());
  for (std::size_t k = 0; k < base.size(); ++k) {
    const double s = base.nodes()[k];
    const double b = inv * (spec.beta() * ctx.g(s) + spec.mu() * ctx.green(spec.eta(), s));
    boundary_samples_.push_back({s, base.weights()[k] * b, grid_.stencil(s)});
  }

  const auto& t_nodes = grid_.nodes();
  row_offsets_.reserve(t_nodes.size() + 1);
  row_offsets_.push_back(0);
  std::vector<double> splits(ctx.breakpoints());
  splits.push_back(0.0);
  for (double t : t_nodes) {
    splits.back() = t;
    const QuadratureRule rule(0.0, 1.0, splits, quad.order, quad.panels);
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const double s = rule.nodes()[k];
      const double w = rule.weights()[k] * ctx.green(t, s);
      if (w != 0.0) row_samples_.push_back({s, w, grid_.stencil(s)});
    }
    row_offsets_.push_back(row_samples_.size());
  }
}

double IntegralOperator::eval_f(const Nonlinearity& f, double s, double u) const {
  double value;
  try {
    value = f(s, u);
  } catch (const std::exception& e) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "nonlinearity failed at (s=" << s << ", u(s)=" << u << "): " << e.what();
    throw DomainError(msg.str());
  }
  if (!std::isfinite(value)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "nonlinearity is not finite at (s=" << s << ", u(s)=" << u << ")";
    throw DomainError(msg.str());
  }
  return value;
}

std::vector<double> IntegralOperator::apply(const Nonlinearity& f, std::span<const double> u) const {
  if (u.size() != grid_.size()) throw ValidationError("integral operator: grid size mismatch");
  double boundary = 0.0;
  for (const Sample& smp : boundary_samples_) {
    boundary += smp.weight * eval_f(f, smp.s, GridFunction::apply(smp.stencil, u));
  }
  const auto& t_nodes = grid_.nodes();
  std::vector<double> out(t_nodes.size());
  for (std::size_t i = 0; i < t_nodes.size(); ++i) {
    double sum = t_nodes[i] * boundary;
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      const Sample& smp = row_samples_[k];
      sum += smp.weight * eval_f(f, smp.s, GridFunction::apply(smp.stencil, u));
    }
    out[i] = sum;
  }
  return out;
}

GridFunction IntegralOperator::apply(const Nonlinearity& f, const GridFunction& u) const {
  if (u.nodes() != grid_.nodes()) throw ValidationError("integral operator: node sets differ");
  return u.with_values(apply(f, u.values()));
}

GridFunction apply_operator(const KernelContext& ctx, const Nonlinearity& f, const GridFunction& u) {
  const IntegralOperator op(ctx, u.nodes(), u.degree());
  return op.apply(f, u);
}

GridFunction solve_linear(const KernelContext& ctx, const RealFn& h, const SolverOptions& options) {
  const IntegralOperator op(ctx, solution_nodes(ctx, options.grid), options.degree);
  const Nonlinearity forcing{[&](double s, double) { return h(s); }, "h(s)"};
  return op.grid().with_values(op.apply(forcing, op.grid().values()));
}

GridFunction solve_linear(const KernelContext& ctx, const GridFunction& h, const SolverOptions& options) {
  return solve_linear(ctx, RealFn([&](double s) { return h(s); }), options);
}

std::pair<GridFunction, SolveReport> picard_solve(const KernelContext& ctx, const Nonlinearity& f,
                                                  const SolverOptions& options,
                                                  const std::optional<GridFunction>& u0) {
  if (!(options.tol > 0.0)) throw ValidationError("picard_solve: tol must be positive");
  if (!(options.damping > 0.0 && options.damping <= 1.0)) {
    throw ValidationError("picard_solve: damping must lie in (0,1]");
  }
  if (options.max_iter < 1) throw ValidationError("picard_solve: max_iter must be >= 1");

  const IntegralOperator op(ctx, u0 ? u0->nodes() : solution_nodes(ctx, options.grid),
                            u0 ? u0->degree() : options.degree);
  std::vector<double> u = u0 ? u0->values() : op.apply(f, op.grid().values());
  const std::size_t n = u.size();

  double omega = options.damping;
  std::vector<double> history;
  int last_halving = 0;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  std::vector<double> best_u = u;
  double best_residual = std::numeric_limits<double>::infinity();

  for (int k = 1; k <= options.max_iter; ++k) {
    iterations = k;
    const std::vector<double> au = op.apply(f, u);
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(u[i] - au[i]));
    history.push_back(residual);
    if (residual < best_residual) {
      best_residual = residual;
      best_u = u;
    }
    if (residual <= options.tol) {
      converged = true;
      break;
    }
    const int window = options.oscillation_window;
    if (k > window && k - last_halving >= window &&
        residual > history[static_cast<std::size_t>(k - 1 - window)] &&
        omega > options.min_damping) {
      omega = std::max(omega / 2.0, options.min_damping);
      last_halving = k;
    }
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = std::max(0.0, (1.0 - omega) * u[i] + omega * au[i]);
    }
  }

  GridFunction solution = op.grid().with_values(converged ? u : best_u);
  SolveReport report = verify_solution(ctx, f, solution);
  report.iterations = iterations;
  report.converged = converged;
  report.damping_used = omega;
  if (options.delta) report.below_delta = report.max_norm <= *options.delta;
  return {std::move(solution), report};
}

SolveReport verify_solution(const KernelContext& ctx, const Nonlinearity& f, const GridFunction& u) {
  SolveReport report;
  const auto& spec = ctx.spec();
  const auto& quad = ctx.quad();

  const IntegralOperator op(ctx, u.nodes(), u.degree());
  const std::vector<double> au = op.apply(f, u.values());
  for (std::size_t i = 0; i < au.size(); ++i) {
    report.fixed_point_residual = std::max(report.fixed_point_residual, std::abs(u.values()[i] - au[i]));
  }

  const RealFn u_fn = [&](double t) { return u(t); };
  report.bc_residual =
      std::abs(u(1.0) - spec.mu() * u(spec.eta()) - spec.beta() * spec.measure().integrate(u_fn));
  report.origin_residual = std::abs(u(0.0));

  // Riemann-Liouville integral on a rule of higher order and twice the panels.
  const int order = quad.order + 2;
  const int panels = 2 * quad.panels;
  const double a1 = ctx.alpha() - 1.0;
  const auto& bps = ctx.breakpoints();
  const auto frac_integral = [&](double t) {
    if (t == 0.0) return 0.0;
    const QuadratureRule rule(0.0, t, bps, order, panels);
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const double s = rule.nodes()[k];
      sum += rule.weights()[k] * std::pow(t - s, a1) * f(s, u(s));
    }
    return sum / ctx.gamma_alpha();
  };
  const double tail = u(1.0) + frac_integral(1.0);
  for (double t : u.nodes()) {
    const double r = u(t) + frac_integral(t) - t * tail;
    report.integral_residual = std::max(report.integral_residual, std::abs(r));
  }

  report.min_value = u.min_value();
  report.max_norm = u.max_abs();
  return report;
}

}  // namespace fbvp
