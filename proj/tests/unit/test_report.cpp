#include <cmath>
#include <limits>
#include <sstream>

#include "check_error.hpp"
#include "doctest.h"
#include "json.hpp"
#include "orthodual/report.hpp"

using namespace orthodual;

namespace {

std::vector<CheckRecord> sample_records() {
  CheckRecord a;
  a.suite = "sep";
  a.check = "self_duality";
  a.parameters = {{"graph", "path-3"}, {"n", "2"}};
  a.metric = "residual";
  a.value = 3.5e-15;
  a.threshold = 1e-10;
  a.decide();
  CheckRecord b;
  b.suite = "mc";
  b.check = "forward_vs_dual";
  b.metric = "z";
  b.value = 5.25;
  b.threshold = 4.0;
  b.note = "a, \"quoted\" note";
  b.decide();
  return {a, b};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("decide") {
  CheckRecord r;
  r.value = 1.0;
  r.threshold = 1.0;
  CHECK(r.decide().pass);
  r.comparison = Comparison::Above;
  CHECK_FALSE(r.decide().pass);
  r.value = 2.0;
  CHECK(r.decide().pass);
  r.value = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(r.decide().pass);
  r.comparison = Comparison::AtMost;
  CHECK_FALSE(r.decide().pass);
}

TEST_CASE("value formatting") {
  CHECK(format_value("z", 1.23456) == "1.235");
  CHECK(format_value("residual", 1.5e-12) == "1.500000e-12");
  CHECK(format_value("relative", 0.0) == "0.000000e+00");
}

TEST_CASE("format names") {
  CHECK(parse_report_format("table") == ReportFormat::Table);
  CHECK(parse_report_format("csv") == ReportFormat::Csv);
  CHECK(parse_report_format("json-lines") == ReportFormat::JsonLines);
  CHECK(parse_report_format("jsonl") == ReportFormat::JsonLines);
  CHECK_ERROR_CODE(parse_report_format("xml"), ParseError);
}

TEST_CASE("csv output") {
  std::ostringstream out;
  write_report(out, sample_records(), ReportFormat::Csv);
  const auto l = lines(out.str());
  REQUIRE(l.size() == 3);
  CHECK(l[0] == "suite,check,parameters,metric,value,threshold,comparison,pass,note");
  CHECK(l[1] == "sep,self_duality,graph=path-3;n=2,residual,3.500000e-15,1.000000e-10,<=,true,");
  CHECK(l[2] == "mc,forward_vs_dual,,z,5.250,4.000,<=,false,\"a, \"\"quoted\"\" note\"");

  auto timed = sample_records();
  timed[0].seconds = 0.25;
  std::ostringstream t;
  write_report(t, timed, ReportFormat::Csv);
  const auto lt = lines(t.str());
  CHECK(lt[0].size() > l[0].size());
  CHECK(lt[0].substr(lt[0].size() - 8) == ",seconds");
  CHECK(lt[1].substr(lt[1].size() - 6) == ",0.250");
  CHECK(lt[2].back() == ',');
}

TEST_CASE("json-lines output") {
  std::ostringstream out;
  write_report(out, sample_records(), ReportFormat::JsonLines);
  const auto l = lines(out.str());
  REQUIRE(l.size() == 2);
  const auto a = nlohmann::json::parse(l[0]);
  CHECK(a["suite"] == "sep");
  CHECK(a["parameters"]["graph"] == "path-3");
  CHECK(a["value"] == "3.500000e-15");
  CHECK(a["comparison"] == "<=");
  CHECK(a["pass"] == true);
  CHECK_FALSE(a.contains("seconds"));
  const auto b = nlohmann::json::parse(l[1]);
  CHECK(b["parameters"].is_object());
  CHECK(b["parameters"].empty());
  CHECK(b["note"] == "a, \"quoted\" note");
  CHECK(b["pass"] == false);
}

TEST_CASE("table output") {
  std::ostringstream out;
  write_report(out, sample_records(), ReportFormat::Table);
  const auto l = lines(out.str());
  REQUIRE(l.size() == 2);
  CHECK(l[0].rfind("PASS  sep/self_duality", 0) == 0);
  CHECK(l[1].rfind("FAIL  mc/forward_vs_dual", 0) == 0);
  CHECK(l[0].find("[graph=path-3;n=2]") != std::string::npos);
  CHECK(l[0].find("residual") == l[1].find("z"));
  std::ostringstream empty;
  write_report(empty, {}, ReportFormat::Table);
  CHECK(empty.str().empty());
}
