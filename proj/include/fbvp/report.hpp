#pragma once

#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fbvp/existence.hpp"
#include "fbvp/kernel.hpp"
#include "fbvp/solver.hpp"

namespace fbvp {

using ordered_json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// %.17g, enough to round-trip any double.
std::string format_double(double value);

/// Serializes with insertion-ordered keys and 17 significant digits for
/// floating-point values. Non-finite numbers become null.
std::string dump_json(const ordered_json& value, int indent = 2);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string to_string() const;
};

/// Writes `text` to `path`, or to standard output when path is "-".
void write_text(const std::string& path, const std::string& text,
                std::ostream& stdout_stream = std::cout);

/// Writes a JSON report or CSV table deterministically to `path`.
void write_report(const ordered_json& report, const std::string& path,
                  std::ostream& stdout_stream = std::cout);
void write_report(const CsvTable& table, const std::string& path,
                  std::ostream& stdout_stream = std::cout);

ordered_json to_json(const HypothesisReport& report);
ordered_json to_json(const CheckResult& result);
ordered_json to_json(const ExistenceCertificate& cert);
ordered_json to_json(const SolveReport& report);

CsvTable grid_function_table(const GridFunction& u, const std::string& value_column = "u");

}  // namespace fbvp
