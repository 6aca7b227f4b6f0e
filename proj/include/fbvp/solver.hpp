#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fbvp/grid_function.hpp"
#include "fbvp/kernel.hpp"
#include "fbvp/quadrature.hpp"

namespace fbvp {

struct SolverOptions {
  int grid = 257;             ///< clustered nodes before breakpoints are merged in
  int degree = 3;             ///< interpolation degree of the iterates
  double tol = 1e-10;         ///< on ‖u - Au‖∞
  int max_iter = 500;
  double damping = 0.5;
  double min_damping = 1.0 / 16.0;
  int oscillation_window = 5;  ///< halve damping if the residual rose over this many steps
  std::optional<double> delta;  ///< flag solutions with ‖u‖ ≤ δ
};

struct SolveReport {
  int iterations = 0;
  double fixed_point_residual = 0.0;  ///< ‖u - Au‖∞ on the grid
  double bc_residual = 0.0;           ///< |u(1) - μ u(η) - β γ[u]|
  double origin_residual = 0.0;       ///< |u(0)|
  double integral_residual = 0.0;     ///< integral-form residual, see verify_solution
  double min_value = 0.0;
  double max_norm = 0.0;
  bool converged = false;
  double damping_used = 0.0;
  bool below_delta = false;
};

/// Default node set: clustered nodes merged with the measure breakpoints and η.
std::vector<double> solution_nodes(const KernelContext& ctx, int grid);

/// Discretized (Au)(t_i) = ∫ H(t_i,s) f(s,u(s)) ds for a fixed node set.
/// Every quadrature rule, kernel weight and interpolation stencil is built
/// once, so repeated application only evaluates f.
///
/// H(t,s) = t B(s) + G(t,s) with B(s) = (β g_A(s) + μ G(η,s))/(1-Λ). The
/// t B(s) part uses one rule over the breakpoints; the G part uses, for each
/// t_i, a rule on [0,1] split at s = t_i and the breakpoints. All weights
/// are nonnegative, so nonnegative f yields nonnegative Au.
class IntegralOperator {
 public:
  IntegralOperator(const KernelContext& ctx, std::vector<double> nodes, int degree = 3);

  const std::vector<double>& nodes() const noexcept { return grid_.nodes(); }
  const GridFunction& grid() const noexcept { return grid_; }

  /// Values of Au at the nodes. `u` holds values at the same nodes.
  std::vector<double> apply(const Nonlinearity& f, std::span<const double> u) const;
  GridFunction apply(const Nonlinearity& f, const GridFunction& u) const;

 private:
  struct Sample {
    double s;
    double weight;  ///< quadrature weight times kernel value
    GridFunction::Stencil stencil;
  };

  double eval_f(const Nonlinearity& f, double s, double u) const;

  GridFunction grid_;
  std::vector<Sample> boundary_samples_;
  std::vector<std::size_t> row_offsets_;
  std::vector<Sample> row_samples_;
};

/// Au on the nodes of u. Throws DomainError naming (s, u(s)) if f fails.
GridFunction apply_operator(const KernelContext& ctx, const Nonlinearity& f, const GridFunction& u);

/// Solution of D^α u + h = 0 with the nonlocal boundary conditions:
/// u(t) = ∫ H(t,s) h(s) ds on the default node set.
GridFunction solve_linear(const KernelContext& ctx, const RealFn& h, const SolverOptions& options = {});
GridFunction solve_linear(const KernelContext& ctx, const GridFunction& h,
                          const SolverOptions& options = {});

/// Damped Picard iteration u ← (1-ω)u + ωAu projected onto u ≥ 0. Starts from
/// A(0) unless `u0` is given. Non-convergence is reported, not thrown.
std::pair<GridFunction, SolveReport> picard_solve(const KernelContext& ctx, const Nonlinearity& f,
                                                  const SolverOptions& options = {},
                                                  const std::optional<GridFunction>& u0 = std::nullopt);

/// Residuals of a candidate solution:
///  - fixed point: ‖u - Au‖∞ on the nodes of u;
///  - boundary: |u(1) - μu(η) - βγ[u]| and |u(0)|;
///  - integral form: max over nodes of |u(t) + I^α g(t) - t (u(1) + I^α g(1))|
///    with g(s) = f(s,u(s)) and I^α the Riemann-Liouville integral, computed
///    on a finer rule than the one inside A;
///  - min and max of u.
SolveReport verify_solution(const KernelContext& ctx, const Nonlinearity& f, const GridFunction& u);

}  // namespace fbvp
