#include "fbvp/existence.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fbvp/error.hpp"
#include "fbvp/spectral.hpp"

namespace fbvp {

namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

// Scans [0,1]×[0,x_hi] and records the smallest margin(t, x).
template <class Margin>
void scan_grid(CheckResult& result, int grid, double x_hi, Margin margin) {
  result.grid = grid;
  result.x_range = x_hi;
  result.worst_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double t = static_cast<double>(i) / (grid - 1);
    for (int j = 0; j < grid; ++j) {
      const double x = x_hi * static_cast<double>(j) / (grid - 1);
      const double m = margin(t, x);
      if (!(m >= result.worst_margin)) {
        result.worst_margin = m;
        result.worst_t = t;
        result.worst_x = x;
      }
    }
  }
  result.sampled_ok = result.worst_margin >= -kMarginTol;
}

}  // namespace

void GrowthEnvelope::validate() const {
  if (!(a > 0.0 && c > 0.0 && b > 0.0 && delta > 0.0)) {
    throw ValidationError("envelope: a, c, b and delta must all be strictly positive");
  }
}

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::sampled_pass: return "sampled-pass";
    case CheckStatus::fail: return "fail";
  }
  return "fail";
}

CheckResult check_c1(const Nonlinearity& f, const GrowthEnvelope& env, double x_max, int grid,
                     double tau2_value, bool declared_global) {
  env.validate();
  if (!(x_max > 0.0)) throw ValidationError("check_c1: x_max must be positive");
  if (grid < 2) throw ValidationError("check_c1: grid must have at least 2 points");
  CheckResult result;
  const double limit = 1.0 / tau2_value;
  result.threshold_ok = env.a < limit;
  result.threshold = "a = " + fmt(env.a) + (result.threshold_ok ? " < " : " >= ") +
                     "1/tau2 = " + fmt(limit);
  // margin = a x + c - f(t,x) >= 0
  scan_grid(result, grid, x_max, [&](double t, double x) { return env.a * x + env.c - f(t, x); });
  if (result.threshold_ok && result.sampled_ok) {
    result.status = declared_global ? CheckStatus::pass : CheckStatus::sampled_pass;
  }
  return result;
}

CheckResult check_c1(const KernelContext& ctx, const Nonlinearity& f, const GrowthEnvelope& env,
                     double x_max, int grid) {
  return check_c1(f, env, x_max, grid, tau2(ctx));
}

CheckResult check_c2(const Nonlinearity& f, const GrowthEnvelope& env, int grid,
                     double tau1_value) {
  env.validate();
  if (grid < 2) throw ValidationError("check_c2: grid must have at least 2 points");
  CheckResult result;
  const double limit = 1.0 / tau1_value;
  result.threshold_ok = env.b >= limit;
  result.threshold = "b = " + fmt(env.b) + (result.threshold_ok ? " >= " : " < ") +
                     "1/tau1 = " + fmt(limit);
  // margin = f(t,x) - b x >= 0
  scan_grid(result, grid, env.delta, [&](double t, double x) { return f(t, x) - env.b * x; });
  if (result.threshold_ok && result.sampled_ok) result.status = CheckStatus::sampled_pass;
  return result;
}

CheckResult check_c2(const KernelContext& ctx, const Nonlinearity& f, const GrowthEnvelope& env,
                     int grid) {
  return check_c2(f, env, grid, tau1(ctx));
}

bool certificate_verdict(CheckStatus h1, CheckStatus h2, CheckStatus c1, CheckStatus c2) {
  return h1 != CheckStatus::fail && h2 != CheckStatus::fail && c1 != CheckStatus::fail &&
         c2 != CheckStatus::fail;
}

ExistenceCertificate certify(const KernelContext& ctx, const Nonlinearity& f,
                             const GrowthEnvelope& env, const CertifyOptions& options) {
  ExistenceCertificate cert;
  cert.lambda = ctx.lambda();
  cert.hypotheses = check_hypotheses(ctx, options.h2_grid);
  cert.h1 = cert.hypotheses.h1 ? CheckStatus::pass : CheckStatus::fail;
  cert.h2 = cert.hypotheses.h2 ? CheckStatus::sampled_pass : CheckStatus::fail;
  cert.notes.push_back("H2 is checked on a grid of " + std::to_string(cert.hypotheses.points_checked) +
                       " points; it is a for-all-s condition");

  if (!ctx.admissible()) {
    cert.notes.push_back("H1 fails: the kernel H and the thresholds tau1, tau2 are undefined");
    cert.c1.threshold = "not evaluated (H1 fails)";
    cert.c2.threshold = "not evaluated (H1 fails)";
    cert.verdict = false;
    return cert;
  }
  cert.tau1 = tau1(ctx);
  cert.tau2 = tau2(ctx);
  cert.c1 = check_c1(f, env, options.x_max, options.grid, cert.tau2, options.c1_declared_global);
  cert.c2 = check_c2(f, env, options.grid, cert.tau1);
  if (cert.c1.status == CheckStatus::sampled_pass) {
    cert.notes.push_back("C1 growth bound sampled on [0," + fmt(options.x_max) +
                         "] only; declare it global to upgrade");
  }
  cert.verdict = certificate_verdict(cert.h1, cert.h2, cert.c1.status, cert.c2.status);
  return cert;
}

}  // namespace fbvp
