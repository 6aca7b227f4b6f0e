#include "fbvp/commands.hpp"

#include <cmath>
#include <ostream>

#include "fbvp/error.hpp"
#include "fbvp/selftest.hpp"
#include "fbvp/spectral.hpp"

namespace fbvp {

namespace {

constexpr int kDefaultNystrom = 256;
constexpr int kDefaultH2Grid = 2001;
constexpr int kDefaultCheckGrid = 200;

KernelContext make_context(const ProblemConfig& cfg, const RunOptions& opts) {
  const QuadSettings quad = effective_quad(cfg, opts);
  return KernelContext(cfg.build_spec(quad), quad);
}

}  // namespace

QuadSettings effective_quad(const ProblemConfig& cfg, const RunOptions& opts) {
  QuadSettings q = cfg.quad();
  if (opts.quad_order) q.order = *opts.quad_order;
  if (opts.quad_panels) q.panels = *opts.quad_panels;
  if (opts.quad_tol) q.rel_tol = *opts.quad_tol;
  if (q.order < 1 || q.panels < 1 || !(q.rel_tol > 0.0)) {
    throw ValidationError("quadrature settings must be positive");
  }
  return q;
}

SolverOptions effective_solver_options(const ProblemConfig& cfg, const RunOptions& opts) {
  SolverOptions s;
  const auto& n = cfg.numerics;
  if (n.grid) s.grid = *n.grid;
  if (n.tol) s.tol = *n.tol;
  if (n.max_iter) s.max_iter = *n.max_iter;
  if (n.damping) s.damping = *n.damping;
  if (opts.grid) s.grid = *opts.grid;
  if (opts.tol) s.tol = *opts.tol;
  if (opts.max_iter) s.max_iter = *opts.max_iter;
  if (opts.damping) s.damping = *opts.damping;
  if (cfg.envelope) s.delta = cfg.envelope->envelope.delta;
  return s;
}

ordered_json analyze_problem(const ProblemConfig& cfg, const RunOptions& opts) {
  const KernelContext ctx = make_context(cfg, opts);
  const HypothesisReport hyp = check_hypotheses(ctx, cfg.numerics.h2_grid.value_or(kDefaultH2Grid));
  ordered_json j;
  j["lambda"] = ctx.lambda();
  if (ctx.admissible()) {
    const SpectralBounds sb = analyze_spectrum(ctx, cfg.numerics.nystrom_n.value_or(kDefaultNystrom));
    j["tau1"] = sb.tau1;
    j["tau2"] = sb.tau2;
    j["tau1_inv"] = 1.0 / sb.tau1;
    j["tau2_inv"] = 1.0 / sb.tau2;
    j["r_estimate"] = sb.r_estimate;
    j["n_nodes"] = sb.n_nodes;
    j["residual"] = sb.residual;
  } else {
    for (const char* key : {"tau1", "tau2", "tau1_inv", "tau2_inv", "r_estimate", "n_nodes", "residual"}) {
      j[key] = nullptr;
    }
  }
  j["h1"] = hyp.h1 ? "pass" : "fail";
  j["h2"] = hyp.h2 ? "sampled-pass" : "fail";
  return j;
}

ExistenceCertificate certify_problem(const ProblemConfig& cfg, const RunOptions& opts) {
  if (!cfg.envelope) throw ValidationError("envelope: missing block required by certify");
  const KernelContext ctx = make_context(cfg, opts);
  CertifyOptions co;
  co.x_max = cfg.envelope->x_max;
  co.c1_declared_global = cfg.envelope->c1_declared_global;
  co.grid = cfg.numerics.check_grid.value_or(kDefaultCheckGrid);
  co.h2_grid = cfg.numerics.h2_grid.value_or(kDefaultH2Grid);
  return certify(ctx, cfg.nonlinearity(), cfg.envelope->envelope, co);
}

std::pair<GridFunction, SolveReport> solve_problem(const ProblemConfig& cfg, const RunOptions& opts) {
  const KernelContext ctx = make_context(cfg, opts);
  return picard_solve(ctx, cfg.nonlinearity(), effective_solver_options(cfg, opts));
}

CsvTable greens_table(const ProblemConfig& cfg, const RunOptions& opts) {
  if (opts.t_points < 2 || opts.s_points < 2) {
    throw ValidationError("greens: --t-points and --s-points must be at least 2");
  }
  const KernelContext ctx = make_context(cfg, opts);
  ctx.require_admissible();
  CsvTable table;
  table.header = {"t", "s", "H", "G", "Phi", "rhoPhi"};
  for (int i = 0; i < opts.t_points; ++i) {
    const double t = static_cast<double>(i) / (opts.t_points - 1);
    const double rho = bound_rho(ctx, t);
    for (int j = 0; j < opts.s_points; ++j) {
      const double s = static_cast<double>(j) / (opts.s_points - 1);
      const double phi = bound_phi(ctx, s);
      table.rows.push_back({t, s, kernel_h(ctx, t, s), ctx.green(t, s), phi, rho * phi});
    }
  }
  return table;
}

int run_command(const std::string& command, const std::optional<std::string>& config_path,
                const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    if (command == "selftest") {
      const auto results = run_selftest(opts.cases, opts.seed);
      bool all = true;
      for (const auto& r : results) {
        out << (r.passed() ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.checks << " checks over "
            << r.cases << " cases, " << r.failures << " failures, worst slack " << format_double(r.worst);
        if (!r.passed()) out << " (" << r.detail << ")";
        out << "\n";
        all = all && r.passed();
      }
      out << (all ? "selftest passed" : "selftest FAILED") << " (cases=" << opts.cases
          << ", seed=" << opts.seed << ")\n";
      return all ? kExitOk : kExitFailure;
    }

    if (!config_path) throw ValidationError(command + ": a problem config path is required");
    const ProblemConfig cfg = load_problem(*config_path);

    if (command == "analyze") {
      const ordered_json j = analyze_problem(cfg, opts);
      write_report(j, opts.output.value_or("-"), out);
      return j["h1"] == "pass" ? kExitOk : kExitValidation;
    }
    if (command == "certify") {
      const ExistenceCertificate cert = certify_problem(cfg, opts);
      write_report(to_json(cert), opts.output.value_or("-"), out);
      return cert.verdict ? kExitOk : kExitCertificate;
    }
    if (command == "solve") {
      const auto [u, report] = solve_problem(cfg, opts);
      write_report(grid_function_table(u), opts.output.value_or("u.csv"), out);
      write_report(to_json(report), opts.report_path.value_or("-"), out);
      if (!report.converged) {
        err << "solve: no convergence after " << report.iterations << " iterations (residual "
            << format_double(report.fixed_point_residual) << ")\n";
        return kExitNonConvergence;
      }
      if (report.below_delta) {
        err << "solve: note: ||u|| = " << format_double(report.max_norm)
            << " does not exceed the envelope delta\n";
      }
      return kExitOk;
    }
    if (command == "greens") {
      write_report(greens_table(cfg, opts), opts.output.value_or("-"), out);
      return kExitOk;
    }
    throw ValidationError("unknown command '" + command + "'");
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const HypothesisError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (best " << format_double(e.best()) << ", estimate "
        << format_double(e.estimate()) << ")\n";
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace fbvp
