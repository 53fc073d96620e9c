#include "orthodual/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"
#include "orthodual/error.hpp"

namespace orthodual {
namespace {

std::string join_parameters(const CheckRecord& r) {
  std::string s;
  for (const auto& [k, v] : r.parameters) {
    if (!s.empty()) s += ';';
    s += k + '=' + v;
  }
  return s;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

const char* comparison_name(Comparison c) { return c == Comparison::AtMost ? "<=" : ">"; }

bool any_seconds(const std::vector<CheckRecord>& records) {
  return std::any_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.seconds.has_value(); });
}

}  // namespace

CheckRecord& CheckRecord::decide() {
  pass = comparison == Comparison::AtMost ? value <= threshold : value > threshold;
  if (std::isnan(value)) pass = false;
  return *this;
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "table") return ReportFormat::Table;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json-lines" || name == "jsonl") return ReportFormat::JsonLines;
  throw Error(ErrorCode::ParseError, "unknown report format '" + name + "'");
}

std::string format_value(const std::string& metric, double v) {
  char buf[64];
  if (metric == "z") {
    std::snprintf(buf, sizeof buf, "%.3f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.6e", v);
  }
  return buf;
}

void write_report(std::ostream& out, const std::vector<CheckRecord>& records, ReportFormat format) {
  const bool timed = any_seconds(records);
  switch (format) {
    case ReportFormat::Table: {
      std::size_t wc = 5, wm = 6;
      constexpr std::size_t wv = 12;
      for (const auto& r : records) {
        wc = std::max(wc, r.suite.size() + 1 + r.check.size());
        wm = std::max(wm, r.metric.size());
      }
      char line[64];
      for (const auto& r : records) {
        std::string name = r.suite + '/' + r.check;
        out << (r.pass ? "PASS  " : "FAIL  ") << name << std::string(wc - name.size() + 2, ' ') << r.metric
            << std::string(wm - r.metric.size() + 2, ' ');
        const std::string v = format_value(r.metric, r.value);
        const std::string t = format_value(r.metric, r.threshold);
        out << v << std::string(v.size() < wv ? wv - v.size() : 1, ' ') << comparison_name(r.comparison) << ' ' << t;
        if (r.seconds) {
          std::snprintf(line, sizeof line, "  %.3fs", *r.seconds);
          out << line;
        }
        const std::string params = join_parameters(r);
        if (!params.empty()) out << "  [" << params << ']';
        if (!r.note.empty()) out << "  " << r.note;
        out << '\n';
      }
      break;
    }
    case ReportFormat::Csv: {
      out << "suite,check,parameters,metric,value,threshold,comparison,pass,note" << (timed ? ",seconds" : "") << '\n';
      for (const auto& r : records) {
        out << csv_escape(r.suite) << ',' << csv_escape(r.check) << ',' << csv_escape(join_parameters(r)) << ','
            << csv_escape(r.metric) << ',' << format_value(r.metric, r.value) << ','
            << format_value(r.metric, r.threshold) << ',' << comparison_name(r.comparison) << ','
            << (r.pass ? "true" : "false") << ',' << csv_escape(r.note);
        if (timed) {
          if (r.seconds) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3f", *r.seconds);
            out << ',' << buf;
          } else {
            out << ',';
          }
        }
        out << '\n';
      }
      break;
    }
    case ReportFormat::JsonLines: {
      for (const auto& r : records) {
        nlohmann::ordered_json j;
        j["suite"] = r.suite;
        j["check"] = r.check;
        nlohmann::ordered_json params = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.parameters) params[k] = v;
        j["parameters"] = params;
        j["metric"] = r.metric;
        j["value"] = format_value(r.metric, r.value);
        j["threshold"] = format_value(r.metric, r.threshold);
        j["comparison"] = comparison_name(r.comparison);
        j["pass"] = r.pass;
        j["note"] = r.note;
        if (r.seconds) j["seconds"] = *r.seconds;
        out << j.dump() << '\n';
      }
      break;
    }
  }
}

}  // namespace orthodual
