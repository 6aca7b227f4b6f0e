#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fbvp/existence.hpp"
#include "fbvp/expr.hpp"
#include "fbvp/kernel.hpp"
#include "fbvp/measures.hpp"
#include "fbvp/quadrature.hpp"

namespace fbvp {

/// Optional numerical overrides from the `numerics` block.
struct NumericsConfig {
  std::optional<int> grid;
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::optional<double> damping;
  std::optional<int> quad_order;
  std::optional<int> quad_panels;
  std::optional<double> quad_tol;
  std::optional<int> nystrom_n;
  std::optional<int> h2_grid;
  std::optional<int> check_grid;
  std::optional<std::uint64_t> seed;
};

struct EnvelopeConfig {
  GrowthEnvelope envelope;
  double x_max;
  bool c1_declared_global = false;
};

struct MeasureConfig {
  std::vector<Atom> atoms;
  std::optional<Expression> density;
  std::vector<double> density_breakpoints;
};

/// A decoded problem file. Every expression has already been parsed.
struct ProblemConfig {
  std::string name;
  double alpha = 0.0;
  double mu = 0.0;
  double eta = 0.0;
  double beta = 0.0;
  MeasureConfig measure;
  Expression f;                  ///< variables {t, u}
  std::optional<Expression> h;   ///< forcing for linear solves, variables {t} or {s}
  std::optional<EnvelopeConfig> envelope;
  NumericsConfig numerics;

  QuadSettings quad() const;
  Nonlinearity nonlinearity() const;
  SignedMeasure build_measure(const QuadSettings& quad) const;
  ProblemSpec build_spec(const QuadSettings& quad) const;
};

/// Parses and validates a problem document. Numeric fields accept JSON
/// numbers or constant expressions such as "3/7". Errors carry the field
/// path, e.g. "measure.atoms[1][0]: ...".
ProblemConfig parse_problem(std::string_view json_text);

/// Reads `path` and calls parse_problem.
ProblemConfig load_problem(const std::string& path);

}  // namespace fbvp
