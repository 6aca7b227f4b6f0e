#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fbvp/quadrature.hpp"

namespace fbvp {

struct Atom {
  double location;
  double weight;
};

/// A piecewise-continuous density on [0,1] together with the points where it
/// may fail to be smooth.
struct Density {
  RealFn fn;
  std::vector<double> breakpoints;
  std::string description;  ///< source text, for reports
};

/// The Stieltjes measure dA of the boundary functional γ[u] = ∫ u dA:
/// a finite set of atoms plus an optional absolutely continuous part.
///
/// Atom locations must be strictly increasing in [0,1] and weights nonzero.
/// Atoms at 0 or 1 are allowed.
class SignedMeasure {
 public:
  SignedMeasure() = default;
  explicit SignedMeasure(std::vector<Atom> atoms, std::optional<Density> density = std::nullopt,
                         const QuadSettings& quad = {});

  static SignedMeasure lebesgue(const QuadSettings& quad = {});

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::optional<Density>& density() const noexcept { return density_; }
  bool atom_only() const noexcept { return !density_.has_value(); }
  bool empty() const noexcept { return atoms_.empty() && !density_; }
  const QuadSettings& quad() const noexcept { return quad_; }

  /// ∫ phi dA. The density part uses composite Gauss quadrature split at the
  /// measure breakpoints and at `extra_breakpoints`.
  double integrate(const RealFn& phi, std::span<const double> extra_breakpoints = {}) const;

  double total_variation() const noexcept { return total_variation_; }

  /// Sorted, deduplicated {0, 1, atom locations, density breakpoints}.
  std::vector<double> breakpoints() const;

 private:
  std::vector<Atom> atoms_;
  std::optional<Density> density_;
  QuadSettings quad_;
  double total_variation_ = 0.0;
};

double rs_integral(const RealFn& phi, const SignedMeasure& measure);
/// As above with the density part integrated at an explicit Gauss order.
double rs_integral(const RealFn& phi, const SignedMeasure& measure, int quad_order);
double total_variation(const SignedMeasure& measure);
std::vector<double> breakpoints(const SignedMeasure& measure);

}  // namespace fbvp
