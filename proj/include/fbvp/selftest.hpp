#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fbvp/kernel.hpp"

namespace fbvp {

/// The five-point problem: α = 5/2, μ = 2, η = 1/7, β = 1,
/// dA = 2δ_{3/7} - δ_{4/7}, f(t,u) = 1 - t + exp(t/4 - u).
ProblemSpec five_point_spec(const QuadSettings& quad = {});

/// Random problem with 0 ≤ Λ < 1 and a nonnegative measure (so g_A ≥ 0):
/// up to three positive atoms and, sometimes, a nonnegative linear density.
ProblemSpec random_admissible_spec(std::mt19937_64& rng, const QuadSettings& quad = {});

struct SuiteResult {
  std::string name;
  int cases = 0;
  long checks = 0;
  long failures = 0;
  double worst = 0.0;   ///< most negative slack (or largest error) seen
  std::string detail;   ///< first failure, if any

  bool passed() const noexcept { return failures == 0 && checks > 0; }
};

SuiteResult suite_quadrature_exactness(int cases, std::mt19937_64& rng);
SuiteResult suite_measure_properties(int cases, std::mt19937_64& rng);
SuiteResult suite_green_bounds(int cases, std::mt19937_64& rng);
SuiteResult suite_kernel_bounds(int cases, std::mt19937_64& rng);
SuiteResult suite_rho_max(int cases, std::mt19937_64& rng);
SuiteResult suite_expression_roundtrip(int cases, std::mt19937_64& rng);
SuiteResult suite_spectral_sandwich(int cases, std::mt19937_64& rng);
SuiteResult suite_linear_solver(int cases, std::mt19937_64& rng);

/// Every suite, each seeded from `seed` independently of the others.
std::vector<SuiteResult> run_selftest(int cases, std::uint64_t seed);

}  // namespace fbvp
