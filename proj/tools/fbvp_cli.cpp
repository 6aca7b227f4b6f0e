// Command-line front end: analyze, certify, solve, greens, selftest.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fbvp/commands.hpp"

namespace {

void add_quad_flags(CLI::App* cmd, fbvp::RunOptions& opts) {
  cmd->add_option("--quad-order", opts.quad_order, "Gauss points per panel");
  cmd->add_option("--quad-panels", opts.quad_panels, "Panels per segment between breakpoints");
  cmd->add_option("--quad-tol", opts.quad_tol, "Relative tolerance for refined integrals");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlocal fractional boundary value problems: spectral bounds, existence "
               "certificates and positive solutions"};
  app.require_subcommand(1);

  fbvp::RunOptions opts;
  std::string config;

  auto* analyze = app.add_subcommand("analyze", "Print Lambda, tau1, tau2 and r(K) as JSON");
  analyze->add_option("config", config, "Problem file (JSON)")->required();
  analyze->add_option("--output", opts.output, "Output path ('-' for stdout)");
  add_quad_flags(analyze, opts);

  auto* certify = app.add_subcommand("certify", "Check H1, H2, C1, C2 and emit a certificate");
  certify->add_option("config", config, "Problem file (JSON)")->required();
  certify->add_option("--output", opts.output, "Output path ('-' for stdout)");
  add_quad_flags(certify, opts);

  auto* solve = app.add_subcommand("solve", "Find a positive solution by damped fixed-point iteration");
  solve->add_option("config", config, "Problem file (JSON)")->required();
  solve->add_option("--tol", opts.tol, "Fixed-point residual tolerance");
  solve->add_option("--max-iter", opts.max_iter, "Iteration limit");
  solve->add_option("--damping", opts.damping, "Initial damping in (0,1]");
  solve->add_option("--grid", opts.grid, "Number of clustered grid nodes");
  solve->add_option("--output", opts.output, "CSV for the solution (t,u); default u.csv");
  solve->add_option("--report", opts.report_path, "JSON report path; default stdout");
  add_quad_flags(solve, opts);

  auto* greens = app.add_subcommand("greens", "Tabulate H, G, Phi and rho*Phi as CSV");
  greens->add_option("config", config, "Problem file (JSON)")->required();
  greens->add_option("--t-points", opts.t_points, "Uniform t points");
  greens->add_option("--s-points", opts.s_points, "Uniform s points");
  greens->add_option("--output", opts.output, "Output path ('-' for stdout)");
  add_quad_flags(greens, opts);

  auto* selftest = app.add_subcommand("selftest", "Run the randomized invariant suites");
  selftest->add_option("--cases", opts.cases, "Cases per suite")->capture_default_str();
  selftest->add_option("--seed", opts.seed, "Random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fbvp::kExitValidation;
  }

  CLI::App* chosen = app.get_subcommands().front();
  std::optional<std::string> config_path;
  if (chosen != selftest) config_path = config;
  return fbvp::run_command(chosen->get_name(), config_path, opts, std::cout, std::cerr);
}
