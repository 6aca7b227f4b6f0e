#include <doctest.h>

#include <cmath>
#include <vector>

#include "fbvp/error.hpp"
#include "fbvp/kernel.hpp"

using namespace fbvp;

namespace {

// Reference values straight from the definitions, with std::tgamma.
double green_ref(double t, double s, double alpha) {
  const double a1 = alpha - 1.0;
  return (t * std::pow(1.0 - s, a1) - (t > s ? std::pow(t - s, a1) : 0.0)) / std::tgamma(alpha);
}

ProblemSpec example_spec() {
  return ProblemSpec(2.5, 2.0, 1.0 / 7.0, 1.0, SignedMeasure({{3.0 / 7.0, 2.0}, {4.0 / 7.0, -1.0}}));
}

}  // namespace

TEST_CASE("green function values") {
  CHECK(green_g(0.5, 0.5, 3.0) == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(psi(0.0, 3.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(psi(0.0, 2.5) == doctest::Approx(1.0 / std::tgamma(2.5)).epsilon(1e-14));
  CHECK(psi(0.0, 2.5) == doctest::Approx(0.752252).epsilon(1e-6));
  for (double t : {0.0, 0.2, 0.7, 1.0}) {
    for (double s : {0.0, 0.1, 0.7, 0.95, 1.0}) {
      CHECK(green_g(t, s, 2.3) == doctest::Approx(green_ref(t, s, 2.3)).epsilon(1e-13));
      CHECK(green_g(t, s, 2.3) >= 0.0);
    }
  }
}

TEST_CASE("green function domain checks") {
  CHECK_THROWS_AS(green_g(1.2, 0.5, 2.5), DomainError);
  CHECK_THROWS_AS(green_g(0.5, 0.5, 3.5), DomainError);
  CHECK_THROWS_AS(rho_max(2.0), DomainError);
}

TEST_CASE("rho max") {
  CHECK(rho_max(3.0) == doctest::Approx(0.25).epsilon(1e-15));
  for (double alpha : {2.1, 2.5, 2.9}) {
    const double x = rho_argmax(alpha);
    CHECK(x - std::pow(x, alpha - 1.0) == doctest::Approx(rho_max(alpha)).epsilon(1e-14));
    CHECK(rho_max(alpha) >= 0.3 - std::pow(0.3, alpha - 1.0));
  }
}

TEST_CASE("lambda and g for the example") {
  const KernelContext ctx(example_spec());
  CHECK(std::abs(ctx.lambda() - 4.0 / 7.0) < 1e-14);
  for (double s : {0.1, 0.45, 0.8}) {
    const double expect = 2.0 * green_ref(3.0 / 7.0, s, 2.5) - green_ref(4.0 / 7.0, s, 2.5);
    CHECK(std::abs(ctx.g(s) - expect) < 1e-14);
  }
  CHECK(ctx.g(0.1) == doctest::Approx(0.143642).epsilon(1e-5));
  CHECK(ctx.breakpoints() == std::vector<double>{0.0, 1.0 / 7.0, 3.0 / 7.0, 4.0 / 7.0, 1.0});
}

TEST_CASE("g with a density matches direct quadrature") {
  Density d{[](double t) { return 1.0 - 0.5 * t; }, {}, "1 - t/2"};
  const ProblemSpec spec(2.3, 0.5, 0.3, 0.4, SignedMeasure({{0.6, 0.3}}, d));
  const KernelContext ctx(spec);
  for (double s : {0.0, 0.05, 0.3, 0.6, 0.77, 1.0}) {
    double expect = 0.3 * green_ref(0.6, s, 2.3);
    // composite Simpson on each side of s
    const int n = 20000;
    auto part = [&](double lo, double hi) {
      double sum = 0.0;
      const double h = (hi - lo) / n;
      for (int i = 0; i <= n; ++i) {
        const double t = lo + i * h;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += w * green_ref(t, s, 2.3) * (1.0 - 0.5 * t);
      }
      return sum * h / 3.0;
    };
    expect += part(0.0, s) + part(s, 1.0);
    CHECK(ctx.g(s) == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("H reduces to G when mu = beta = 0") {
  const KernelContext ctx(ProblemSpec(3.0, 0.0, 0.5, 0.0, SignedMeasure{}));
  CHECK(ctx.lambda() == 0.0);
  for (double t : {0.0, 0.3, 1.0}) {
    for (double s : {0.0, 0.3, 0.8}) {
      CHECK(std::abs(kernel_h(ctx, t, s) - green_g(t, s, 3.0)) < 1e-12);
    }
  }
}

TEST_CASE("kernel bounds on the example") {
  const KernelContext ctx(example_spec());
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double t = i / 20.0, s = j / 20.0;
      const double h = kernel_h(ctx, t, s);
      CHECK(h <= bound_phi(ctx, s) + 1e-12);
      CHECK(h >= bound_rho(ctx, t) * bound_phi(ctx, s) - 1e-12);
      CHECK(h >= -1e-12);
    }
  }
}

TEST_CASE("hypothesis failures") {
  // negative atom makes g_A negative
  const KernelContext neg(ProblemSpec(2.5, 1.0, 0.5, 0.2, SignedMeasure({{0.5, -1.0}})));
  const auto rep = check_hypotheses(neg, 201);
  CHECK(rep.h1);
  CHECK_FALSE(rep.h2);
  CHECK_FALSE(rep.violations.empty());
  CHECK(rep.g_min < 0.0);

  const KernelContext big(ProblemSpec(2.5, 2.0, 0.6, 0.0, SignedMeasure{}));
  CHECK(big.lambda() == doctest::Approx(1.2));
  CHECK_FALSE(big.admissible());
  CHECK_FALSE(check_hypotheses(big, 101).h1);
  CHECK_THROWS_AS(big.require_admissible(), HypothesisError);
  CHECK_THROWS_AS(kernel_h(big, 0.5, 0.5), HypothesisError);
}

TEST_CASE("example passes both hypotheses") {
  const auto rep = check_hypotheses(KernelContext(example_spec()), 2001);
  CHECK(rep.h1);
  CHECK(rep.h2);
  CHECK(rep.points_checked >= 2001);
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(ProblemSpec(3.5, 0.0, 0.5, 0.0, SignedMeasure{}), ValidationError);
  CHECK_THROWS_AS(ProblemSpec(2.0, 0.0, 0.5, 0.0, SignedMeasure{}), ValidationError);
  CHECK_THROWS_AS(ProblemSpec(2.5, 0.0, 1.0, 0.0, SignedMeasure{}), ValidationError);
  CHECK_THROWS_AS(ProblemSpec(2.5, -1.0, 0.5, 0.0, SignedMeasure{}), ValidationError);
}
