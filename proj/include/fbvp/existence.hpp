#pragma once

#include <string>
#include <vector>

#include "fbvp/kernel.hpp"

namespace fbvp {

/// Growth envelope for f: f(t,x) ≤ a x + c on [0,1]×[0,∞) and
/// f(t,x) ≥ b x on [0,1]×[0,δ].
struct GrowthEnvelope {
  double a;
  double c;
  double b;
  double delta;

  /// Throws ValidationError unless all four are strictly positive.
  void validate() const;
};

enum class CheckStatus { pass, sampled_pass, fail };

const char* to_string(CheckStatus status);

struct CheckResult {
  CheckStatus status = CheckStatus::fail;
  std::string threshold;        ///< human-readable threshold comparison
  bool threshold_ok = false;
  bool sampled_ok = false;
  int grid = 0;                 ///< points per axis of the (t,x) sample grid
  double x_range = 0.0;         ///< sampled x ∈ [0, x_range]
  double worst_margin = 0.0;    ///< smallest slack of the pointwise inequality
  double worst_t = 0.0;
  double worst_x = 0.0;

  bool ok() const noexcept { return status != CheckStatus::fail; }
};

inline constexpr double kMarginTol = 1e-12;

/// (C1): a < 1/τ₂ and f(t,x) ≤ a x + c on a grid over [0,1]×[0,x_max].
/// `declared_global` upgrades a sampled pass to pass (user asserts the bound
/// holds for all x ≥ 0).
CheckResult check_c1(const Nonlinearity& f, const GrowthEnvelope& env, double x_max, int grid,
                     double tau2_value, bool declared_global = false);
/// As above with τ₂ computed from the context.
CheckResult check_c1(const KernelContext& ctx, const Nonlinearity& f, const GrowthEnvelope& env,
                     double x_max, int grid);

/// (C2): b ≥ 1/τ₁ and f(t,x) ≥ b x on a grid over [0,1]×[0,δ].
CheckResult check_c2(const Nonlinearity& f, const GrowthEnvelope& env, int grid,
                     double tau1_value);
CheckResult check_c2(const KernelContext& ctx, const Nonlinearity& f, const GrowthEnvelope& env,
                     int grid);

struct CertifyOptions {
  double x_max = 50.0;
  int grid = 200;
  int h2_grid = 2001;
  bool c1_declared_global = false;
};

struct ExistenceCertificate {
  double lambda = 0.0;
  double tau1 = 0.0;  ///< 0 when (H1) fails
  double tau2 = 0.0;
  CheckStatus h1 = CheckStatus::fail;
  CheckStatus h2 = CheckStatus::fail;
  HypothesisReport hypotheses;
  CheckResult c1;
  CheckResult c2;
  bool verdict = false;
  std::vector<std::string> notes;
};

/// Verdict is true iff H1, H2, C1 and C2 each pass or sampled-pass.
bool certificate_verdict(CheckStatus h1, CheckStatus h2, CheckStatus c1, CheckStatus c2);

ExistenceCertificate certify(const KernelContext& ctx, const Nonlinearity& f,
                             const GrowthEnvelope& env, const CertifyOptions& options = {});

}  // namespace fbvp
