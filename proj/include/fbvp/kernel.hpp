#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fbvp/grid_function.hpp"
#include "fbvp/measures.hpp"
#include "fbvp/quadrature.hpp"

namespace fbvp {

/// f(t, u) of the boundary value problem.
struct Nonlinearity {
  std::function<double(double, double)> fn;
  std::string description;

  double operator()(double t, double u) const { return fn(t, u); }
  explicit operator bool() const noexcept { return static_cast<bool>(fn); }
};

/// Boundary data of D^α u + f(t,u) = 0, u(0) = u''(0) = 0,
/// u(1) = μ u(η) + β ∫ u dA. Λ = μη + β ∫ t dA(t) is computed on construction.
class ProblemSpec {
 public:
  /// Throws ValidationError unless 2 < α ≤ 3, 0 < η < 1, μ ≥ 0 and β ≥ 0.
  ProblemSpec(double alpha, double mu, double eta, double beta, SignedMeasure measure,
              Nonlinearity f = {});

  double alpha() const noexcept { return alpha_; }
  double mu() const noexcept { return mu_; }
  double eta() const noexcept { return eta_; }
  double beta() const noexcept { return beta_; }
  const SignedMeasure& measure() const noexcept { return measure_; }
  const Nonlinearity& nonlinearity() const noexcept { return f_; }
  double lambda() const noexcept { return lambda_; }
  /// (H1): 0 ≤ Λ < 1.
  bool admissible() const noexcept { return lambda_ >= 0.0 && lambda_ < 1.0; }

 private:
  double alpha_;
  double mu_;
  double eta_;
  double beta_;
  SignedMeasure measure_;
  Nonlinearity f_;
  double lambda_;
};

double lambda_const(const ProblemSpec& spec);

/// G(t,s) of the Caputo problem with u(0) = u''(0) = u(1) = 0.
double green_g(double t, double s, double alpha);
/// Ψ(s) = (1-s)^{α-1} / Γ(α), the upper envelope of G(·,s).
double psi(double s, double alpha);
/// max_{t∈[0,1]} (t - t^{α-1}) = (α-2) / (α-1)^{(α-1)/(α-2)}.
double rho_max(double alpha);
/// Maximizer of t - t^{α-1}: (α-1)^{-1/(α-2)}.
double rho_argmax(double alpha);

/// Immutable evaluation context: the problem, Λ, Γ(α), and a table of g_A.
class KernelContext {
 public:
  explicit KernelContext(ProblemSpec spec, QuadSettings quad = {}, int table_size = 257);

  const ProblemSpec& spec() const noexcept { return spec_; }
  const QuadSettings& quad() const noexcept { return quad_; }
  double lambda() const noexcept { return spec_.lambda(); }
  bool admissible() const noexcept { return spec_.admissible(); }
  /// Throws HypothesisError if (H1) fails.
  void require_admissible() const;

  double alpha() const noexcept { return spec_.alpha(); }
  double gamma_alpha() const noexcept { return gamma_alpha_; }

  /// G and Ψ with the cached Γ(α); no domain checks.
  double green(double t, double s) const;
  double psi(double s) const;

  /// g_A(s): exact sum for atom-only measures, table value at table nodes,
  /// otherwise evaluated by quadrature.
  double g(double s) const;
  const GridFunction& g_table() const noexcept { return g_table_; }

  /// Measure breakpoints together with η; the t-independent parts of H
  /// are smooth between these points.
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }

 private:
  double g_exact(double s) const;

  ProblemSpec spec_;
  QuadSettings quad_;
  double gamma_alpha_;
  double density_moment_ = 0.0;  ///< integral of t against the density part
  std::vector<double> breakpoints_;
  GridFunction g_table_;
};

/// g_A(s) = ∫ G(t,s) dA(t), evaluated directly from the measure.
double g_weight(const KernelContext& ctx, double s);

/// H(t,s) = βt/(1-Λ) g_A(s) + μt/(1-Λ) G(η,s) + G(t,s).
double kernel_h(const KernelContext& ctx, double t, double s);
/// Φ(s) = β/(1-Λ) g_A(s) + (μ-Λ+1)/(1-Λ) Ψ(s); H(t,s) ≤ Φ(s).
double bound_phi(const KernelContext& ctx, double s);
/// ρ(t) = (η-η^{α-1})(t-t^{α-1}); ρ(t)Φ(s) ≤ H(t,s).
double bound_rho(const KernelContext& ctx, double t);

struct HypothesisReport {
  double lambda = 0.0;
  bool h1 = false;
  bool h2 = false;                 ///< sampled on the grid below
  int grid_size = 0;               ///< uniform points, breakpoints added on top
  std::size_t points_checked = 0;
  double tolerance = 0.0;
  double g_min = 0.0;
  double g_min_at = 0.0;
  std::vector<double> violations;  ///< s where g_A(s) < -tolerance
};

/// (H1) exactly, (H2) by sampling g_A on a uniform grid plus all breakpoints.
HypothesisReport check_hypotheses(const KernelContext& ctx, int grid_size, double tol = 1e-12);

}  // namespace fbvp
