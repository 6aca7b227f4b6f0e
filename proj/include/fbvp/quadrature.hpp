#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fbvp {

using RealFn = std::function<double(double)>;

/// Quadrature knobs shared by every integral in the library.
struct QuadSettings {
  int order = 8;                ///< Gauss points per panel
  int panels = 16;              ///< panels per segment between breakpoints
  double rel_tol = 1e-12;       ///< target for refine_until
  int max_panels = 1 << 13;     ///< per-segment refinement budget
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point Gauss-Legendre rule. Nodes ascend.
const GaussLegendre& gauss_legendre(int n);

struct Panel {
  double a;
  double b;
  int order;
};

/// Composite Gauss rule on [a,b] whose panel edges include every breakpoint
/// strictly inside (a,b). Breakpoints outside (a,b) are ignored.
class QuadratureRule {
 public:
  QuadratureRule() = default;
  QuadratureRule(double a, double b, std::span<const double> breakpoints, int order,
                 int panels_per_segment);

  /// Exactly `total_nodes` nodes: panels are spread over the segments in
  /// proportion to their length (at least one each) and the remainder is
  /// absorbed by raising the order of the leading panels by one.
  static QuadratureRule with_total_nodes(double a, double b, std::span<const double> breakpoints,
                                         int order, int total_nodes);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  const std::vector<Panel>& panels() const noexcept { return panels_; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  /// Σ wᵢ f(xᵢ). Throws DomainError naming the node on a non-finite sample.
  double integrate(const RealFn& f) const;

 private:
  void add_panel(double lo, double hi, int order);

  double a_ = 0.0;
  double b_ = 0.0;
  std::vector<Panel> panels_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Sorted segment edges of [a,b]: a, interior breakpoints, b (deduplicated).
std::vector<double> segment_edges(double a, double b, std::span<const double> breakpoints);

double integrate(const RealFn& f, double a, double b, std::span<const double> breakpoints = {},
                 int order = 8, int panels_per_segment = 16);

struct RefineResult {
  double value;
  double est_error;
  int panels_per_segment;
};

/// Doubles the panel count (starting from `settings.panels`) until two
/// successive values agree to `target_rel_tol` relative. Throws
/// ConvergenceError with the best value once `settings.max_panels` is exceeded.
RefineResult refine_until(const RealFn& f, double a, double b, std::span<const double> breakpoints,
                          double target_rel_tol, const QuadSettings& settings = {});

}  // namespace fbvp
