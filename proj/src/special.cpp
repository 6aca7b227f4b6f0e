#include "fbvp/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "fbvp/error.hpp"

namespace fbvp {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("gamma_fn: argument must be positive and finite");
  }
  if (x < 0.5) {
    // Reflection keeps the series in its accurate range.
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
  }
  const double z = x - 1.0;
  double series = kLanczosCoeffs[0];
  for (std::size_t k = 1; k < kLanczosCoeffs.size(); ++k) {
    series += kLanczosCoeffs[k] / (z + static_cast<double>(k));
  }
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * series;
}

}  // namespace fbvp
