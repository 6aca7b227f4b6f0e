#include "fbvp/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace fbvp {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

void dump(const ordered_json& v, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (v.type()) {
    case ordered_json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += ordered_json(key).dump();
        out += sep;
        dump(item, indent, depth + 1, out);
      }
      out += nl;
      out += close_pad;
      out += "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) {
          out += ",";
          out += nl;
        }
        out += pad;
        dump(v[i], indent, depth + 1, out);
      }
      out += nl;
      out += close_pad;
      out += "]";
      return;
    }
    case ordered_json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_double(d) : "null";
      return;
    }
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const ordered_json& value, int indent) {
  std::string out;
  dump(value, indent, 0, out);
  return out;
}

std::string CsvTable::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ",";
    out += header[i];
  }
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += format_double(row[i]);
    }
    out += "\n";
  }
  return out;
}

void write_text(const std::string& path, const std::string& text, std::ostream& stdout_stream) {
  if (path == "-") {
    stdout_stream << text;
    stdout_stream.flush();
    if (!stdout_stream) throw IoError("cannot write to standard output");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

void write_report(const ordered_json& report, const std::string& path, std::ostream& stdout_stream) {
  write_text(path, dump_json(report) + "\n", stdout_stream);
}

void write_report(const CsvTable& table, const std::string& path, std::ostream& stdout_stream) {
  write_text(path, table.to_string(), stdout_stream);
}

ordered_json to_json(const HypothesisReport& report) {
  ordered_json j;
  j["lambda"] = report.lambda;
  j["h1"] = report.h1 ? "pass" : "fail";
  j["h2"] = report.h2 ? "sampled-pass" : "fail";
  j["h2_grid"] = report.grid_size;
  j["h2_points_checked"] = report.points_checked;
  j["h2_tolerance"] = report.tolerance;
  j["g_min"] = report.g_min;
  j["g_min_at"] = report.g_min_at;
  ordered_json violations = ordered_json::array();
  constexpr std::size_t kListed = 20;
  for (std::size_t i = 0; i < report.violations.size() && i < kListed; ++i) {
    violations.push_back(report.violations[i]);
  }
  j["h2_violations"] = violations;
  j["h2_violation_count"] = report.violations.size();
  return j;
}

ordered_json to_json(const CheckResult& result) {
  ordered_json j;
  j["status"] = to_string(result.status);
  j["threshold"] = result.threshold;
  j["threshold_ok"] = result.threshold_ok;
  j["sampled_ok"] = result.sampled_ok;
  j["grid"] = result.grid;
  j["x_range"] = result.x_range;
  j["worst_margin"] = result.worst_margin;
  j["worst_t"] = result.worst_t;
  j["worst_x"] = result.worst_x;
  return j;
}

ordered_json to_json(const ExistenceCertificate& cert) {
  ordered_json j;
  j["verdict"] = cert.verdict;
  j["lambda"] = cert.lambda;
  j["tau1"] = cert.tau1;
  j["tau2"] = cert.tau2;
  j["tau1_inv"] = cert.tau1 > 0.0 ? 1.0 / cert.tau1 : NAN;
  j["tau2_inv"] = cert.tau2 > 0.0 ? 1.0 / cert.tau2 : NAN;
  j["h1"] = to_string(cert.h1);
  j["h2"] = to_string(cert.h2);
  j["c1"] = to_json(cert.c1);
  j["c2"] = to_json(cert.c2);
  j["hypotheses"] = to_json(cert.hypotheses);
  j["notes"] = cert.notes;
  return j;
}

ordered_json to_json(const SolveReport& report) {
  ordered_json j;
  j["converged"] = report.converged;
  j["iterations"] = report.iterations;
  j["fixed_point_residual"] = report.fixed_point_residual;
  j["bc_residual"] = report.bc_residual;
  j["origin_residual"] = report.origin_residual;
  j["integral_residual"] = report.integral_residual;
  j["min_value"] = report.min_value;
  j["max_norm"] = report.max_norm;
  j["damping_used"] = report.damping_used;
  j["below_delta"] = report.below_delta;
  return j;
}

CsvTable grid_function_table(const GridFunction& u, const std::string& value_column) {
  CsvTable table;
  table.header = {"t", value_column};
  for (std::size_t i = 0; i < u.size(); ++i) table.rows.push_back({u.nodes()[i], u.values()[i]});
  return table;
}

}  // namespace fbvp
