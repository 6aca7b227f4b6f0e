#include <doctest.h>

#include <cmath>
#include <string>

#include "fbvp/error.hpp"
#include "fbvp/expr.hpp"

using namespace fbvp;

namespace {
const std::set<std::string> kTU{"t", "u"};
}

TEST_CASE("power is right associative") {
  CHECK(parse("2^3^2", {}).evaluate(Bindings{}) == 512.0);
  CHECK(parse("-2^2", {}).evaluate(Bindings{}) == -4.0);
  CHECK(parse("(1+2)*3 - 4/8", {}).evaluate(Bindings{}) == 8.5);
}

TEST_CASE("the example nonlinearity") {
  const auto f = parse("1 - t + exp(t/4 - u)", kTU);
  CHECK(f.evaluate(Bindings{}.set(Var::t, 0).set(Var::u, 0)) == doctest::Approx(2.0));
  CHECK(f.evaluate(Bindings{}.set(Var::t, 1).set(Var::u, 0)) ==
        doctest::Approx(std::exp(0.25)).epsilon(1e-15));
  CHECK(f.evaluate({{"t", 1.0}, {"u", 0.0}}) == doctest::Approx(1.2840254166877414));
  CHECK(f.free_vars() == std::set<std::string>{"t", "u"});
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse("1 +", kTU);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 3);
    CHECK(std::string(e.what()).find("position 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("(1 + t", kTU), ParseError);
  CHECK_THROWS_AS(parse("1 2", kTU), ParseError);
  CHECK_THROWS_AS(parse("", kTU), ParseError);
}

TEST_CASE("unknown names are rejected") {
  CHECK_THROWS_AS(parse("x + 1", kTU), ParseError);
  CHECK_THROWS_AS(parse("foo(t)", kTU), ParseError);
  CHECK_THROWS_AS(parse("pow(t)", kTU), ParseError);
}

TEST_CASE("builtin functions") {
  const Bindings none;
  CHECK(parse("gamma(5)", {}).evaluate(none) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(parse("pow(2, 10)", {}).evaluate(none) == 1024.0);
  CHECK(parse("sqrt(16) + abs(-1) + log(1) + sin(0) + cos(0)", {}).evaluate(none) == 6.0);
  CHECK(parse("1e-3 * 2.5E2", {}).evaluate(none) == doctest::Approx(0.25));
}

TEST_CASE("evaluation domain errors") {
  CHECK_THROWS_AS(parse("(-8)^(1/3)", {}).evaluate(Bindings{}), DomainError);
  CHECK(parse("(-2)^3", {}).evaluate(Bindings{}) == -8.0);
  CHECK_THROWS_AS(parse("log(0)", {}).evaluate(Bindings{}), DomainError);
  CHECK_THROWS_AS(parse("1/u", kTU).evaluate(Bindings{}.set(Var::t, 0).set(Var::u, 0)), DomainError);
}

TEST_CASE("unbound variables are an error at evaluation") {
  CHECK_THROWS(parse("t + u", kTU).evaluate(Bindings{}.set(Var::t, 1)));
}

TEST_CASE("to_string round trips") {
  for (const char* src : {"1 - t + exp(t/4 - u)", "-u^2^0.5 * (t - 3)", "pow(t, 2.5) / gamma(3.5)",
                          "0.1 + 1/3"}) {
    const auto e = parse(src, kTU);
    const auto again = parse(e.to_string(), kTU);
    const Bindings b = Bindings{}.set(Var::t, 0.37).set(Var::u, 1.3);
    CHECK(again.evaluate(b) == e.evaluate(b));
    CHECK(again.to_string() == e.to_string());
  }
}
