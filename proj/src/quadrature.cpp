#include "fbvp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "fbvp/error.hpp"

namespace fbvp {

namespace {

GaussLegendre compute_gauss_legendre(int n) {
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  if (n < 1) throw ValidationError("gauss_legendre: order must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendre>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussLegendre>(compute_gauss_legendre(n));
  return *slot;
}

std::vector<double> segment_edges(double a, double b, std::span<const double> breakpoints) {
  std::vector<double> edges{a};
  for (double p : breakpoints) {
    if (p > a && p < b) edges.push_back(p);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

QuadratureRule::QuadratureRule(double a, double b, std::span<const double> breakpoints, int order,
                               int panels_per_segment)
    : a_(a), b_(b) {
  if (!(a <= b)) throw ValidationError("quadrature: require a <= b");
  if (order < 1 || panels_per_segment < 1) {
    throw ValidationError("quadrature: order and panel count must be positive");
  }
  if (a == b) return;
  const auto edges = segment_edges(a, b, breakpoints);
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double h = (edges[k + 1] - edges[k]) / panels_per_segment;
    for (int p = 0; p < panels_per_segment; ++p) {
      const double lo = edges[k] + p * h;
      const double hi = (p + 1 == panels_per_segment) ? edges[k + 1] : edges[k] + (p + 1) * h;
      add_panel(lo, hi, order);
    }
  }
}

QuadratureRule QuadratureRule::with_total_nodes(double a, double b,
                                                std::span<const double> breakpoints, int order,
                                                int total_nodes) {
  if (!(a < b)) throw ValidationError("quadrature: require a < b");
  const auto edges = segment_edges(a, b, breakpoints);
  const int segments = static_cast<int>(edges.size()) - 1;
  if (order < 1 || total_nodes < segments) {
    std::ostringstream msg;
    msg << "quadrature: " << total_nodes << " nodes cannot cover " << segments << " segments";
    throw ValidationError(msg.str());
  }
  // Too few nodes for one panel per segment at this order: lower the order.
  order = std::min(order, total_nodes / segments);
  const int panel_count = total_nodes / order;
  // Largest-remainder apportionment with one panel per segment reserved.
  std::vector<int> per_segment(segments, 1);
  std::vector<std::pair<double, int>> remainders;
  const int spare = panel_count - segments;
  int assigned = 0;
  for (int k = 0; k < segments; ++k) {
    const double share = spare * (edges[k + 1] - edges[k]) / (b - a);
    const int whole = static_cast<int>(std::floor(share));
    per_segment[k] += whole;
    assigned += whole;
    remainders.emplace_back(share - whole, k);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& l, const auto& r) { return l.first > r.first; });
  for (int k = 0; assigned < spare; ++k, ++assigned) ++per_segment[remainders[k].second];

  int extra_points = total_nodes - panel_count * order;
  QuadratureRule rule;
  rule.a_ = a;
  rule.b_ = b;
  for (int k = 0; k < segments; ++k) {
    const double h = (edges[k + 1] - edges[k]) / per_segment[k];
    for (int p = 0; p < per_segment[k]; ++p) {
      const double lo = edges[k] + p * h;
      const double hi = (p + 1 == per_segment[k]) ? edges[k + 1] : edges[k] + (p + 1) * h;
      const int panel_order = order + (extra_points > 0 ? 1 : 0);
      if (extra_points > 0) --extra_points;
      rule.add_panel(lo, hi, panel_order);
    }
  }
  return rule;
}

void QuadratureRule::add_panel(double lo, double hi, int order) {
  const auto& gl = gauss_legendre(order);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (int i = 0; i < order; ++i) {
    nodes_.push_back(mid + half * gl.nodes[i]);
    weights_.push_back(half * gl.weights[i]);
  }
  panels_.push_back({lo, hi, order});
}

double QuadratureRule::integrate(const RealFn& f) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const double v = f(nodes_[i]);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "quadrature: non-finite integrand value at node " << nodes_[i];
      throw DomainError(msg.str());
    }
    sum += weights_[i] * v;
  }
  return sum;
}

double integrate(const RealFn& f, double a, double b, std::span<const double> breakpoints, int order,
                 int panels_per_segment) {
  return QuadratureRule(a, b, breakpoints, order, panels_per_segment).integrate(f);
}

RefineResult refine_until(const RealFn& f, double a, double b, std::span<const double> breakpoints,
                          double target_rel_tol, const QuadSettings& settings) {
  if (!(target_rel_tol > 0.0)) throw ValidationError("refine_until: tolerance must be positive");
  int panels = settings.panels;
  double previous = integrate(f, a, b, breakpoints, settings.order, panels);
  double diff = 0.0;
  while (true) {
    panels *= 2;
    const double current = integrate(f, a, b, breakpoints, settings.order, panels);
    diff = std::abs(current - previous);
    if (diff <= target_rel_tol * std::abs(current)) return {current, diff, panels};
    if (panels * 2 > settings.max_panels) {
      throw ConvergenceError("refine_until: panel budget exhausted before reaching tolerance",
                             current, diff);
    }
    previous = current;
  }
}

}  // namespace fbvp
