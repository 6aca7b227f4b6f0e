#include <doctest.h>

#include <cmath>
#include <vector>

#include "fbvp/error.hpp"
#include "fbvp/grid_function.hpp"

using namespace fbvp;

TEST_CASE("interpolation is exact at nodes and for low degree polynomials") {
  const auto nodes = clustered_nodes(33, std::vector<double>{});
  std::vector<double> vals;
  for (double x : nodes) vals.push_back(x * x * x - x);
  const GridFunction u(nodes, vals, 3);
  for (std::size_t i = 0; i < nodes.size(); ++i) CHECK(u(nodes[i]) == vals[i]);
  for (double x : {0.013, 0.31, 0.5, 0.777, 0.999}) {
    CHECK(u(x) == doctest::Approx(x * x * x - x).epsilon(1e-13));
  }
}

TEST_CASE("clustered nodes include required points and endpoints") {
  const std::vector<double> req{1.0 / 7.0, 3.0 / 7.0};
  const auto nodes = clustered_nodes(65, req);
  CHECK(nodes.front() == 0.0);
  CHECK(nodes.back() == 1.0);
  for (double r : req) CHECK(std::find(nodes.begin(), nodes.end(), r) != nodes.end());
  for (std::size_t i = 1; i < nodes.size(); ++i) CHECK(nodes[i] > nodes[i - 1]);
}

TEST_CASE("invalid grids are rejected") {
  CHECK_THROWS_AS(GridFunction({0.1, 1.0}, {0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(GridFunction({0.0, 0.6, 0.5, 1.0}, {0, 0, 0, 0}), ValidationError);
  CHECK_THROWS_AS(GridFunction({0.0, 1.0}, {0.0}), ValidationError);
}

TEST_CASE("norms") {
  const GridFunction u({0.0, 0.5, 1.0}, {0.0, -2.0, 1.0}, 1);
  CHECK(u.max_abs() == 2.0);
  CHECK(u.min_value() == -2.0);
  CHECK(max_abs_diff(u, u.with_values({0.0, -2.0, 1.5})) == doctest::Approx(0.5));
}
