#include "fbvp/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fbvp/error.hpp"

namespace fbvp {

namespace {

std::string atom_label(std::size_t index, const Atom& atom) {
  std::ostringstream out;
  out.precision(17);
  out << "atom " << index << " (t=" << atom.location << ", w=" << atom.weight << ")";
  return out.str();
}

}  // namespace

SignedMeasure::SignedMeasure(std::vector<Atom> atoms, std::optional<Density> density,
                             const QuadSettings& quad)
    : atoms_(std::move(atoms)), density_(std::move(density)), quad_(quad) {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const Atom& atom = atoms_[i];
    if (!std::isfinite(atom.location) || atom.location < 0.0 || atom.location > 1.0) {
      throw ValidationError("measure: " + atom_label(i, atom) + " lies outside [0,1]");
    }
    if (!std::isfinite(atom.weight) || atom.weight == 0.0) {
      throw ValidationError("measure: " + atom_label(i, atom) + " must have a finite nonzero weight");
    }
    if (i > 0 && !(atom.location > atoms_[i - 1].location)) {
      throw ValidationError("measure: " + atom_label(i, atom) +
                            " is not strictly after the previous atom");
    }
  }
  if (density_) {
    if (!density_->fn) throw ValidationError("measure: density has no function");
    auto& bps = density_->breakpoints;
    for (double p : bps) {
      if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw ValidationError("measure: density breakpoint outside [0,1]");
      }
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  }

  double tv = 0.0;
  for (const Atom& atom : atoms_) tv += std::abs(atom.weight);
  if (density_) {
    const auto& fn = density_->fn;
    tv += QuadratureRule(0.0, 1.0, density_->breakpoints, quad_.order, quad_.panels)
              .integrate([&](double t) { return std::abs(fn(t)); });
  }
  total_variation_ = tv;
}

SignedMeasure SignedMeasure::lebesgue(const QuadSettings& quad) {
  return SignedMeasure({}, Density{[](double) { return 1.0; }, {}, "1"}, quad);
}

double SignedMeasure::integrate(const RealFn& phi, std::span<const double> extra_breakpoints) const {
  double sum = 0.0;
  for (const Atom& atom : atoms_) sum += atom.weight * phi(atom.location);
  if (density_) {
    std::vector<double> bps(density_->breakpoints);
    bps.insert(bps.end(), extra_breakpoints.begin(), extra_breakpoints.end());
    const auto& fn = density_->fn;
    sum += QuadratureRule(0.0, 1.0, bps, quad_.order, quad_.panels)
               .integrate([&](double t) { return phi(t) * fn(t); });
  }
  return sum;
}

std::vector<double> SignedMeasure::breakpoints() const {
  std::vector<double> out{0.0, 1.0};
  for (const Atom& atom : atoms_) out.push_back(atom.location);
  if (density_) out.insert(out.end(), density_->breakpoints.begin(), density_->breakpoints.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double rs_integral(const RealFn& phi, const SignedMeasure& measure) { return measure.integrate(phi); }

double rs_integral(const RealFn& phi, const SignedMeasure& measure, int quad_order) {
  if (quad_order < 1) throw ValidationError("rs_integral: quadrature order must be positive");
  double sum = 0.0;
  for (const Atom& atom : measure.atoms()) sum += atom.weight * phi(atom.location);
  if (const auto& density = measure.density()) {
    sum += QuadratureRule(0.0, 1.0, density->breakpoints, quad_order, measure.quad().panels)
               .integrate([&](double t) { return phi(t) * density->fn(t); });
  }
  return sum;
}

double total_variation(const SignedMeasure& measure) { return measure.total_variation(); }

std::vector<double> breakpoints(const SignedMeasure& measure) { return measure.breakpoints(); }

}  // namespace fbvp
