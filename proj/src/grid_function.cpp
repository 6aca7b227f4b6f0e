#include "fbvp/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fbvp/error.hpp"

namespace fbvp {

GridFunction::GridFunction(std::vector<double> nodes, std::vector<double> values, int degree)
    : nodes_(std::move(nodes)), values_(std::move(values)), degree_(degree) {
  if (nodes_.size() < 2) throw ValidationError("grid function: need at least two nodes");
  if (nodes_.size() != values_.size()) {
    throw ValidationError("grid function: nodes and values differ in length");
  }
  if (degree_ < 0 || degree_ > kMaxDegree) {
    throw ValidationError("grid function: interpolation degree out of range");
  }
  if (nodes_.front() != 0.0 || nodes_.back() != 1.0) {
    throw ValidationError("grid function: nodes must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > nodes_[i - 1])) {
      throw ValidationError("grid function: nodes must be strictly increasing");
    }
  }
  degree_ = std::min<int>(degree_, static_cast<int>(nodes_.size()) - 1);
}

GridFunction::Stencil GridFunction::stencil(double x) const {
  constexpr double kSlack = 1e-13;
  if (!(x >= -kSlack && x <= 1.0 + kSlack)) {
    throw DomainError("grid function: evaluation point outside [0,1]");
  }
  x = std::clamp(x, 0.0, 1.0);
  Stencil st;
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  const std::size_t right = static_cast<std::size_t>(it - nodes_.begin());
  const std::size_t k = right == 0 ? 0 : right - 1;  // nodes_[k] <= x
  if (nodes_[k] == x || degree_ == 0) {
    st.first = k;
    st.count = 1;
    st.coeffs[0] = 1.0;
    return st;
  }
  const std::size_t n = nodes_.size();
  const std::size_t width = static_cast<std::size_t>(degree_) + 1;
  const std::size_t back = static_cast<std::size_t>(degree_ - 1) / 2;
  std::size_t first = k > back ? k - back : 0;
  first = std::min(first, n - width);
  st.first = first;
  st.count = static_cast<int>(width);
  for (std::size_t j = 0; j < width; ++j) {
    double c = 1.0;
    const double xj = nodes_[first + j];
    for (std::size_t m = 0; m < width; ++m) {
      if (m == j) continue;
      const double xm = nodes_[first + m];
      c *= (x - xm) / (xj - xm);
    }
    st.coeffs[j] = c;
  }
  return st;
}

double GridFunction::apply(const Stencil& st, std::span<const double> values) {
  double sum = 0.0;
  for (int j = 0; j < st.count; ++j) sum += st.coeffs[j] * values[st.first + j];
  return sum;
}

GridFunction GridFunction::with_values(std::vector<double> values) const {
  if (values.size() != nodes_.size()) {
    throw ValidationError("grid function: replacement values differ in length");
  }
  GridFunction copy = *this;
  copy.values_ = std::move(values);
  return copy;
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

std::vector<double> clustered_nodes(int count, std::span<const double> required) {
  if (count < 2) throw ValidationError("clustered_nodes: need at least two points");
  std::vector<double> fixed{0.0, 1.0};
  for (double p : required) {
    if (p < 0.0 || p > 1.0) throw ValidationError("clustered_nodes: required point outside [0,1]");
    fixed.push_back(p);
  }
  std::sort(fixed.begin(), fixed.end());
  fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());

  std::vector<double> cheb(count);
  for (int j = 0; j < count; ++j) {
    cheb[j] = 0.5 * (1.0 - std::cos(std::numbers::pi * j / (count - 1)));
  }
  cheb.front() = 0.0;
  cheb.back() = 1.0;

  std::vector<double> out = fixed;
  for (int j = 1; j + 1 < count; ++j) {
    const double spacing = std::min(cheb[j] - cheb[j - 1], cheb[j + 1] - cheb[j]);
    const auto nearest = std::lower_bound(fixed.begin(), fixed.end(), cheb[j]);
    double gap = 1.0;
    if (nearest != fixed.end()) gap = std::min(gap, *nearest - cheb[j]);
    if (nearest != fixed.begin()) gap = std::min(gap, cheb[j] - *(nearest - 1));
    if (gap > 0.25 * spacing) out.push_back(cheb[j]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a.values()[i] - b(a.nodes()[i])));
  }
  return m;
}

}  // namespace fbvp
