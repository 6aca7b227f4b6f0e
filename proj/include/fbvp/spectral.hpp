#pragma once

#include <vector>

#include <Eigen/Dense>

#include "fbvp/grid_function.hpp"
#include "fbvp/kernel.hpp"
#include "fbvp/quadrature.hpp"

namespace fbvp {

/// τ₁ ≤ r(K) ≤ τ₂ for (Ku)(t) = ∫ H(t,s) u(s) ds, plus a numerical Perron pair.
struct SpectralBounds {
  double tau1 = 0.0;
  double tau2 = 0.0;
  double r_estimate = 0.0;
  GridFunction eigenfunction;  ///< nonnegative, max-norm 1
  int n_nodes = 0;
  double residual = 0.0;       ///< ‖M v - r v‖∞ of the discrete pair
  bool degenerate = false;     ///< r = 0 (zero kernel)
};

/// τ₁ = (η-η^{α-1})/(1-Λ) ∫ (s-s^{α-1}) (β g_A(s) + (μ-Λ+1) Ψ(s)) ds.
double tau1(const KernelContext& ctx);
/// τ₂ = (β ∫ g_A + (μ-Λ+1)/Γ(α+1)) / (1-Λ).
double tau2(const KernelContext& ctx);

struct NystromSystem {
  QuadratureRule rule;     ///< nodes double as collocation points
  Eigen::MatrixXd matrix;  ///< M(i,j) = H(s_i, s_j) w_j
};

/// n-point Nyström discretization; panel edges include the measure
/// breakpoints and η. Requires n ≥ 8 and (H1).
NystromSystem nystrom_system(const KernelContext& ctx, int n);
Eigen::MatrixXd nystrom_matrix(const KernelContext& ctx, int n);

struct PowerResult {
  double r = 0.0;
  Eigen::VectorXd v;  ///< nonnegative, max-norm 1
  double residual = 0.0;
  int iterations = 0;
};

/// Power iteration from v ≡ 1 for a nonnegative matrix. Stops once the
/// ratio estimate settles and ‖Mv - rv‖∞ ≤ tol; throws ConvergenceError
/// (carrying the last r and residual) after `max_iter` steps.
PowerResult power_iteration(const Eigen::MatrixXd& m, double tol, int max_iter);

/// (‖M^k‖∞)^{1/k} for k = 1..n_max. Uses M^k·1 (row sums, valid for
/// nonnegative M); the running product of norms is kept as mantissa and
/// binary exponent so large powers neither overflow nor underflow.
std::vector<double> gelfand_check(const Eigen::MatrixXd& m, int n_max);

/// Bounds for K_a = aK: τ₁, τ₂ and r scale by a, the eigenfunction does not.
SpectralBounds scale_radius(double a, const SpectralBounds& bounds);

/// τ₁, τ₂ and the Nyström power-iteration estimate at n nodes.
SpectralBounds analyze_spectrum(const KernelContext& ctx, int n = 256, double tol = 1e-13,
                                int max_iter = 20000);

struct SandwichCheck {
  double tau1 = 0.0;
  double tau2 = 0.0;
  double r_coarse = 0.0;  ///< at n nodes
  double r_fine = 0.0;    ///< at 2n nodes
  double epsilon = 0.0;   ///< max(1e-6, |r_fine - r_coarse|)
  bool holds = false;     ///< τ₁ - ε ≤ r_coarse ≤ τ₂ + ε
};

SandwichCheck sandwich_check(const KernelContext& ctx, int n = 256);

}  // namespace fbvp
