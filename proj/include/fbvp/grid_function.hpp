#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace fbvp {

/// Values of a function on an ordered node set covering [0,1], evaluated
/// between nodes by local Lagrange interpolation of the declared degree.
/// Evaluation at a node returns the stored value exactly.
class GridFunction {
 public:
  static constexpr int kMaxDegree = 7;

  /// Precomputed interpolation weights for one evaluation point.
  struct Stencil {
    std::size_t first = 0;
    int count = 0;
    std::array<double, kMaxDegree + 1> coeffs{};
  };

  GridFunction() = default;
  GridFunction(std::vector<double> nodes, std::vector<double> values, int degree = 3);

  double operator()(double x) const { return apply(stencil(x), values_); }

  Stencil stencil(double x) const;
  /// Interpolates `values` (same layout as the nodes) with a stencil from this grid.
  static double apply(const Stencil& st, std::span<const double> values);

  GridFunction with_values(std::vector<double> values) const;

  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& values() const noexcept { return values_; }
  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  double max_abs() const;
  double min_value() const;

 private:
  std::vector<double> nodes_;
  std::vector<double> values_;
  int degree_ = 3;
};

/// `count` Chebyshev-Lobatto points mapped to [0,1], merged with `required`
/// points. Clustered points that land within a quarter spacing of a required
/// point are dropped so the node set stays well separated.
std::vector<double> clustered_nodes(int count, std::span<const double> required);

/// Sup-norm distance between two grid functions sampled on the nodes of `a`.
double max_abs_diff(const GridFunction& a, const GridFunction& b);

}  // namespace fbvp
