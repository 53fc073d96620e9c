#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace orthodual {

enum class Comparison { AtMost, Above };

/// One check outcome with its parameter echo.
struct CheckRecord {
  std::string suite;
  std::string check;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string metric;   // "residual", "z", ...
  double value = 0.0;
  double threshold = 0.0;
  Comparison comparison = Comparison::AtMost;
  bool pass = false;
  std::string note;
  std::optional<double> seconds;

  /// Sets pass from value, threshold and comparison.
  CheckRecord& decide();
};

enum class ReportFormat { Table, Csv, JsonLines };

ReportFormat parse_report_format(const std::string& name);

/// Numbers: z-scores with 3 decimals, everything else %.6e.
std::string format_value(const std::string& metric, double v);

/// table: aligned columns with a PASS/FAIL column.
/// csv: header suite,check,parameters,metric,value,threshold,comparison,pass,note[,seconds];
///   parameters as "key=value;key=value".
/// json-lines: one object per record with the same keys, parameters as an object.
void write_report(std::ostream& out, const std::vector<CheckRecord>& records, ReportFormat format);

}  // namespace orthodual
