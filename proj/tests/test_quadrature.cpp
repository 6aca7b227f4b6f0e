#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "fbvp/error.hpp"
#include "fbvp/quadrature.hpp"

using namespace fbvp;

TEST_CASE("gauss-legendre weights sum to 2 and integrate polynomials exactly") {
  for (int n : {1, 2, 5, 8, 12}) {
    const auto& gl = gauss_legendre(n);
    REQUIRE(gl.nodes.size() == static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double w : gl.weights) sum += w;
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
    // degree 2n-1 monomial, odd -> 0; degree 2n-2 even
    const int p = 2 * n - 2;
    double q = 0.0;
    for (int i = 0; i < n; ++i) q += gl.weights[i] * std::pow(gl.nodes[i], p);
    CHECK(q == doctest::Approx(2.0 / (p + 1)).epsilon(1e-13));
  }
}

TEST_CASE("integrals with fractional powers") {
  const double a1 = 1.5;
  // endpoint behaviour caps the default 16 panels near 2e-9, so use 64
  CHECK(std::abs(integrate([&](double s) { return std::pow(1.0 - s, a1); }, 0.0, 1.0, {}, 8, 64) -
                 0.4) < 1e-10);
  CHECK(std::abs(integrate([&](double s) { return s - std::pow(s, a1); }, 0.0, 1.0, {}, 8, 64) -
                 0.1) < 1e-10);
  CHECK(std::abs(refine_until([&](double s) { return std::pow(1.0 - s, a1); }, 0.0, 1.0, {}, 1e-12)
                     .value -
                 0.4) < 1e-10);
}

TEST_CASE("refine_until on a truncated power") {
  const double c = 4.0 / 7.0;
  const auto r = refine_until([&](double s) { return std::pow(c - s, 1.5); }, 0.0, c, {}, 1e-9);
  CHECK(r.value == doctest::Approx(0.4 * std::pow(c, 2.5)).epsilon(1e-9));
  CHECK(r.value == doctest::Approx(0.098735).epsilon(1e-5));

  const auto one = refine_until([](double) { return 1.0; }, 0.0, 1.0, {}, 1e-12);
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(one.panels_per_segment == 32);

  const auto e = refine_until([](double s) { return std::exp(s); }, 0.0, 1.0, {}, 1e-12);
  CHECK(e.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("splitting at a breakpoint leaves smooth integrals unchanged") {
  const auto f = [](double s) { return std::cos(3.0 * s) + s * s; };
  const std::vector<double> bp{0.3, 4.0 / 7.0};
  CHECK(std::abs(integrate(f, 0.0, 1.0, bp) - integrate(f, 0.0, 1.0)) < 1e-12);
}

TEST_CASE("smooth integrands are exact to rounding") {
  CHECK(integrate([](double s) { return std::exp(s); }, 0.0, 1.0) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
  CHECK(integrate([](double) { return 3.0; }, 0.0, 1.0) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("breakpoints outside the interval are ignored") {
  const std::vector<double> bp{-1.0, 0.0, 0.5, 1.0, 2.0};
  const auto edges = segment_edges(0.0, 1.0, bp);
  CHECK(edges == std::vector<double>{0.0, 0.5, 1.0});
}

TEST_CASE("with_total_nodes hits the requested count") {
  const std::vector<double> bp{1.0 / 7.0, 3.0 / 7.0, 4.0 / 7.0};
  for (int n : {8, 31, 64, 256, 257}) {
    const auto rule = QuadratureRule::with_total_nodes(0.0, 1.0, bp, 8, n);
    CHECK(rule.size() == static_cast<std::size_t>(n));
    CHECK(rule.integrate([](double s) { return s; }) == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("with_total_nodes rejects too few nodes") {
  const std::vector<double> bp{0.25, 0.5, 0.75};
  CHECK_THROWS_AS(QuadratureRule::with_total_nodes(0.0, 1.0, bp, 8, 3), ValidationError);
}

TEST_CASE("refine_until converges and reports the panel count") {
  const auto r = refine_until([](double s) { return std::pow(1.0 - s, 1.2); }, 0.0, 1.0, {}, 1e-10);
  CHECK(r.value == doctest::Approx(1.0 / 2.2).epsilon(1e-10));
  CHECK(r.panels_per_segment >= 16);
}

TEST_CASE("refine_until throws with the best value when the budget runs out") {
  QuadSettings q;
  q.max_panels = 32;
  try {
    refine_until([](double s) { return std::sqrt(s); }, 0.0, 1.0, {}, 1e-15, q);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.best() == doctest::Approx(2.0 / 3.0).epsilon(1e-4));
    CHECK(e.estimate() > 0.0);
  }
}

TEST_CASE("non-finite integrands are reported") {
  CHECK_THROWS_AS(integrate([](double) { return std::numeric_limits<double>::quiet_NaN(); }, 0.0, 1.0),
                  DomainError);
}
