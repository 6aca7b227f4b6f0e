#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "fbvp/config.hpp"
#include "fbvp/existence.hpp"
#include "fbvp/report.hpp"
#include "fbvp/solver.hpp"

namespace fbvp {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,        ///< I/O and other unexpected errors
  kExitValidation = 2,
  kExitNonConvergence = 3,
  kExitCertificate = 4,
};

/// Command-line overrides; unset fields fall back to the config's numerics
/// block and then to library defaults.
struct RunOptions {
  std::optional<int> quad_order;
  std::optional<int> quad_panels;
  std::optional<double> quad_tol;

  std::optional<double> tol;
  std::optional<int> max_iter;
  std::optional<double> damping;
  std::optional<int> grid;

  std::optional<std::string> output;  ///< "-" is standard output
  std::optional<std::string> report_path;

  int t_points = 21;
  int s_points = 21;

  int cases = 100;
  std::uint64_t seed = 42;
};

QuadSettings effective_quad(const ProblemConfig& cfg, const RunOptions& opts);
SolverOptions effective_solver_options(const ProblemConfig& cfg, const RunOptions& opts);

/// {lambda, tau1, tau2, tau1_inv, tau2_inv, r_estimate, n_nodes, residual, h1, h2}.
/// The tau fields are null when (H1) fails.
ordered_json analyze_problem(const ProblemConfig& cfg, const RunOptions& opts = {});

/// Throws ValidationError if the config has no envelope block.
ExistenceCertificate certify_problem(const ProblemConfig& cfg, const RunOptions& opts = {});

std::pair<GridFunction, SolveReport> solve_problem(const ProblemConfig& cfg, const RunOptions& opts = {});

/// Kernel table with columns t,s,H,G,Phi,rhoPhi on uniform grids.
CsvTable greens_table(const ProblemConfig& cfg, const RunOptions& opts = {});

/// Dispatches analyze|certify|solve|greens|selftest, writing artifacts and
/// diagnostics. Returns the process exit code.
int run_command(const std::string& command, const std::optional<std::string>& config_path,
                const RunOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace fbvp
