#include <doctest.h>

#include <cmath>

#include "fbvp/error.hpp"
#include "fbvp/existence.hpp"
#include "fbvp/selftest.hpp"
#include "fbvp/spectral.hpp"

using namespace fbvp;

namespace {

const Nonlinearity kExampleF{[](double t, double u) { return 1.0 - t + std::exp(t / 4.0 - u); },
                             "1 - t + exp(t/4 - u)"};
const GrowthEnvelope kExampleEnv{0.4, 3.0, 58.0, 0.015};

}  // namespace

TEST_CASE("example certificate") {
  const KernelContext ctx(five_point_spec());
  const auto cert = certify(ctx, kExampleF, kExampleEnv);
  CHECK(cert.verdict);
  CHECK(cert.h1 == CheckStatus::pass);
  CHECK(cert.h2 == CheckStatus::sampled_pass);
  CHECK(cert.c1.status == CheckStatus::sampled_pass);
  CHECK(cert.c2.status == CheckStatus::sampled_pass);
  CHECK(cert.c1.worst_margin >= 0.0);
}

TEST_CASE("raising a past the threshold flips C1") {
  const KernelContext ctx(five_point_spec());
  GrowthEnvelope env = kExampleEnv;
  env.a = 0.6;
  const auto cert = certify(ctx, kExampleF, env);
  CHECK_FALSE(cert.verdict);
  CHECK(cert.c1.status == CheckStatus::fail);
  CHECK_FALSE(cert.c1.threshold_ok);
  CHECK(cert.c2.ok());
}

TEST_CASE("thresholds are strict where required") {
  const double t2 = 0.5, t1 = 0.02;
  const Nonlinearity lin{[](double, double u) { return 0.5 * u; }, "u/2"};
  // a equal to 1/tau2 is not below it
  CHECK(check_c1(lin, {2.0, 1.0, 50.0, 0.1}, 10.0, 20, t2).status == CheckStatus::fail);
  CHECK(check_c1(lin, {1.9, 1.0, 50.0, 0.1}, 10.0, 20, t2).ok());
  // b one below 1/tau1
  const Nonlinearity steep{[](double, double u) { return 100.0 * u; }, "100u"};
  CHECK(check_c2(steep, {1.0, 1.0, 49.0, 0.1}, 20, t1).status == CheckStatus::fail);
  CHECK(check_c2(steep, {1.0, 1.0, 50.0, 0.1}, 20, t1).ok());
}

TEST_CASE("superlinear growth fails the sampled C1 check") {
  const Nonlinearity sq{[](double, double u) { return u * u; }, "u^2"};
  const auto r = check_c1(sq, {1.0, 1.0, 50.0, 0.1}, 10.0, 50, 0.5);
  CHECK(r.threshold_ok);
  CHECK_FALSE(r.sampled_ok);
  CHECK(r.status == CheckStatus::fail);
  CHECK(r.worst_x > 1.0);
}

TEST_CASE("declared global C1 is reported as a pass") {
  const Nonlinearity lin{[](double, double u) { return 0.5 * u; }, "u/2"};
  CHECK(check_c1(lin, {1.0, 1.0, 50.0, 0.1}, 10.0, 20, 0.5, true).status == CheckStatus::pass);
}

TEST_CASE("C1 monotone in a, C2 monotone in b") {
  const KernelContext ctx(five_point_spec());
  bool seen_fail = false;
  for (double a = 0.1; a < 0.9; a += 0.05) {
    GrowthEnvelope env = kExampleEnv;
    env.a = a;
    const bool ok = check_c1(ctx, kExampleF, env, 50.0, 40).ok();
    if (!ok) seen_fail = true;
    CHECK_FALSE((ok && seen_fail));
  }
  CHECK(seen_fail);
  bool seen_pass = false;
  for (double b = 40.0; b < 80.0; b += 2.0) {
    GrowthEnvelope env = kExampleEnv;
    env.b = b;
    const bool ok = check_c2(ctx, kExampleF, env, 40).ok();
    if (ok) seen_pass = true;
    CHECK_FALSE((!ok && seen_pass));
  }
  CHECK(seen_pass);
}

TEST_CASE("verdict table") {
  using S = CheckStatus;
  CHECK(certificate_verdict(S::pass, S::sampled_pass, S::sampled_pass, S::pass));
  CHECK_FALSE(certificate_verdict(S::fail, S::pass, S::pass, S::pass));
  CHECK_FALSE(certificate_verdict(S::pass, S::fail, S::pass, S::pass));
  CHECK_FALSE(certificate_verdict(S::pass, S::pass, S::fail, S::pass));
  CHECK_FALSE(certificate_verdict(S::pass, S::pass, S::pass, S::fail));
  CHECK(std::string(to_string(S::sampled_pass)) == "sampled-pass");
}

TEST_CASE("H1 failure yields a negative certificate without thresholds") {
  const KernelContext ctx(ProblemSpec(2.5, 2.0, 0.6, 0.0, SignedMeasure{}));
  const auto cert = certify(ctx, kExampleF, kExampleEnv);
  CHECK_FALSE(cert.verdict);
  CHECK(cert.h1 == CheckStatus::fail);
  CHECK_FALSE(cert.notes.empty());
}

TEST_CASE("envelope validation") {
  CHECK_THROWS_AS((GrowthEnvelope{0.0, 1.0, 1.0, 1.0}.validate()), ValidationError);
  CHECK_THROWS_AS((GrowthEnvelope{1.0, 1.0, 1.0, -1.0}.validate()), ValidationError);
}
