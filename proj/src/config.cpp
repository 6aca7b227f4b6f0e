#include "fbvp/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fbvp/error.hpp"

namespace fbvp {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& known) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) {
      field_error(path.empty() ? key : path + "." + key, "unknown field");
    }
  }
}

double read_number(const json& value, const std::string& path) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    try {
      return parse(value.get<std::string>(), {}).evaluate(Bindings{});
    } catch (const std::exception& e) {
      field_error(path, std::string("not a constant expression (") + e.what() + ")");
    }
  }
  field_error(path, "expected a number or constant expression string");
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) field_error(path.empty() ? key : path + "." + key, "missing field");
  return obj.at(key);
}

Expression read_expression(const json& value, const std::string& path,
                           const std::set<std::string>& vars) {
  if (!value.is_string()) field_error(path, "expected an expression string");
  try {
    return parse(value.get<std::string>(), vars);
  } catch (const ParseError& e) {
    field_error(path, e.what());
  }
}

int read_int(const json& value, const std::string& path) {
  if (!value.is_number_integer()) field_error(path, "expected an integer");
  return value.get<int>();
}

MeasureConfig read_measure(const json& obj) {
  const std::string path = "measure";
  if (!obj.is_object()) field_error(path, "expected an object");
  reject_unknown(obj, path, {"atoms", "density", "density_breakpoints"});
  MeasureConfig m;
  if (obj.contains("atoms")) {
    const json& atoms = obj.at("atoms");
    if (!atoms.is_array()) field_error(path + ".atoms", "expected an array of [t, w] pairs");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const std::string ap = path + ".atoms[" + std::to_string(i) + "]";
      if (!atoms[i].is_array() || atoms[i].size() != 2) field_error(ap, "expected [t, w]");
      m.atoms.push_back({read_number(atoms[i][0], ap + "[0]"), read_number(atoms[i][1], ap + "[1]")});
    }
  }
  if (obj.contains("density") && !obj.at("density").is_null()) {
    m.density = read_expression(obj.at("density"), path + ".density", {"t", "s"});
  }
  if (obj.contains("density_breakpoints")) {
    const json& bps = obj.at("density_breakpoints");
    if (!bps.is_array()) field_error(path + ".density_breakpoints", "expected an array");
    for (std::size_t i = 0; i < bps.size(); ++i) {
      m.density_breakpoints.push_back(
          read_number(bps[i], path + ".density_breakpoints[" + std::to_string(i) + "]"));
    }
  }
  return m;
}

EnvelopeConfig read_envelope(const json& obj) {
  const std::string path = "envelope";
  if (!obj.is_object()) field_error(path, "expected an object");
  reject_unknown(obj, path, {"a", "c", "b", "delta", "x_max", "c1_declared_global"});
  EnvelopeConfig e{};
  e.envelope.a = read_number(require(obj, "a", path), path + ".a");
  e.envelope.c = read_number(require(obj, "c", path), path + ".c");
  e.envelope.b = read_number(require(obj, "b", path), path + ".b");
  e.envelope.delta = read_number(require(obj, "delta", path), path + ".delta");
  e.x_max = read_number(require(obj, "x_max", path), path + ".x_max");
  if (obj.contains("c1_declared_global")) {
    if (!obj.at("c1_declared_global").is_boolean()) {
      field_error(path + ".c1_declared_global", "expected a boolean");
    }
    e.c1_declared_global = obj.at("c1_declared_global").get<bool>();
  }
  try {
    e.envelope.validate();
  } catch (const ValidationError& err) {
    field_error(path, err.what());
  }
  if (!(e.x_max > 0.0)) field_error(path + ".x_max", "must be positive");
  return e;
}

NumericsConfig read_numerics(const json& obj) {
  const std::string path = "numerics";
  if (!obj.is_object()) field_error(path, "expected an object");
  reject_unknown(obj, path,
                 {"grid", "tol", "max_iter", "damping", "quad_order", "quad_panels", "quad_tol",
                  "nystrom_n", "h2_grid", "check_grid", "seed"});
  NumericsConfig n;
  auto int_field = [&](const char* key, std::optional<int>& out) {
    if (obj.contains(key)) out = read_int(obj.at(key), path + "." + key);
  };
  auto real_field = [&](const char* key, std::optional<double>& out) {
    if (obj.contains(key)) out = read_number(obj.at(key), path + "." + key);
  };
  int_field("grid", n.grid);
  real_field("tol", n.tol);
  int_field("max_iter", n.max_iter);
  real_field("damping", n.damping);
  int_field("quad_order", n.quad_order);
  int_field("quad_panels", n.quad_panels);
  real_field("quad_tol", n.quad_tol);
  int_field("nystrom_n", n.nystrom_n);
  int_field("h2_grid", n.h2_grid);
  int_field("check_grid", n.check_grid);
  if (obj.contains("seed")) {
    if (!obj.at("seed").is_number_unsigned()) field_error(path + ".seed", "expected a nonnegative integer");
    n.seed = obj.at("seed").get<std::uint64_t>();
  }
  return n;
}

}  // namespace

QuadSettings ProblemConfig::quad() const {
  QuadSettings q;
  if (numerics.quad_order) q.order = *numerics.quad_order;
  if (numerics.quad_panels) q.panels = *numerics.quad_panels;
  if (numerics.quad_tol) q.rel_tol = *numerics.quad_tol;
  return q;
}

Nonlinearity ProblemConfig::nonlinearity() const {
  const Expression expr = f;
  return Nonlinearity{[expr](double t, double u) {
                        return expr.evaluate(Bindings{}.set(Var::t, t).set(Var::u, u));
                      },
                      expr.source()};
}

SignedMeasure ProblemConfig::build_measure(const QuadSettings& quad) const {
  std::optional<Density> density;
  if (measure.density) {
    const Expression expr = *measure.density;
    density = Density{[expr](double t) {
                        return expr.evaluate(Bindings{}.set(Var::t, t).set(Var::s, t));
                      },
                      measure.density_breakpoints, expr.source()};
  } else if (!measure.density_breakpoints.empty()) {
    throw ValidationError("measure.density_breakpoints: given without a density");
  }
  try {
    return SignedMeasure(measure.atoms, std::move(density), quad);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("measure: ") + e.what());
  }
}

ProblemSpec ProblemConfig::build_spec(const QuadSettings& quad) const {
  return ProblemSpec(alpha, mu, eta, beta, build_measure(quad), nonlinearity());
}

ProblemConfig parse_problem(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: JSON parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config: top level must be an object");
  reject_unknown(doc, "",
                 {"name", "description", "alpha", "mu", "eta", "beta", "measure", "f", "h",
                  "envelope", "numerics"});

  ProblemConfig cfg;
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) field_error("name", "expected a string");
    cfg.name = doc.at("name").get<std::string>();
  }
  cfg.alpha = read_number(require(doc, "alpha", ""), "alpha");
  cfg.mu = read_number(require(doc, "mu", ""), "mu");
  cfg.eta = read_number(require(doc, "eta", ""), "eta");
  cfg.beta = read_number(require(doc, "beta", ""), "beta");
  if (!(cfg.alpha > 2.0 && cfg.alpha <= 3.0)) field_error("alpha", "alpha must lie in (2,3]");
  if (!(cfg.eta > 0.0 && cfg.eta < 1.0)) field_error("eta", "eta must lie in (0,1)");
  if (!(cfg.mu >= 0.0)) field_error("mu", "mu must be >= 0");
  if (!(cfg.beta >= 0.0)) field_error("beta", "beta must be >= 0");

  cfg.measure = read_measure(require(doc, "measure", ""));
  cfg.f = read_expression(require(doc, "f", ""), "f", {"t", "u"});
  if (doc.contains("h")) cfg.h = read_expression(doc.at("h"), "h", {"t", "s"});
  if (doc.contains("envelope")) cfg.envelope = read_envelope(doc.at("envelope"));
  if (doc.contains("numerics")) cfg.numerics = read_numerics(doc.at("numerics"));

  // Surface measure errors at load time with their field path.
  (void)cfg.build_measure(cfg.quad());
  return cfg;
}

ProblemConfig load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("config: cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem(buffer.str());
}

}  // namespace fbvp
