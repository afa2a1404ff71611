#include "llcartan/report.hpp"

#include <cstdio>
#include <sstream>

namespace llcartan::report {

bool Report::ok() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Check& Report::add(std::string id, std::string anchor, double residual,
                   double tolerance, bool expected_fail) {
  Check c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.residual = residual;
  c.tolerance = tolerance;
  c.expected_fail = expected_fail;
  c.pass = residual <= tolerance;
  checks.push_back(std::move(c));
  return checks.back();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += ch;
    }
  }
  return out;
}

void emit_map(std::ostringstream& os, const std::map<std::string, double>& m) {
  os << '{';
  bool first = true;
  for (const auto& [k, v] : m) {
    if (!first) os << ',';
    first = false;
    os << '"' << json_escape(k) << "\":" << format_double(v);
  }
  os << '}';
}

std::string emit_json(const Report& rep) {
  std::ostringstream os;
  os << "{\"checks\":[";
  for (std::size_t i = 0; i < rep.checks.size(); ++i) {
    const Check& c = rep.checks[i];
    if (i) os << ',';
    os << "{\"anchor\":\"" << json_escape(c.anchor) << "\",\"expected_fail\":"
       << (c.expected_fail ? "true" : "false") << ",\"id\":\""
       << json_escape(c.id) << "\",\"pass\":" << (c.pass ? "true" : "false")
       << ",\"residual\":" << format_double(c.residual)
       << ",\"tolerance\":" << format_double(c.tolerance) << '}';
  }
  os << "],\"environment\":";
  emit_map(os, rep.environment);
  os << ",\"parameters\":";
  emit_map(os, rep.parameters);
  os << ",\"scenario\":\"" << json_escape(rep.scenario)
     << "\",\"wall_time_ms\":" << format_double(rep.wall_time_ms) << "}\n";
  return os.str();
}

std::string emit_csv(const Report& rep) {
  std::ostringstream os;
  os << "scenario,check_id,anchor,residual,tolerance,pass,expected_fail\n";
  for (const Check& c : rep.checks) {
    std::string anchor = c.anchor;
    for (char& ch : anchor)
      if (ch == ',') ch = ';';
    os << rep.scenario << ',' << c.id << ',' << anchor << ','
       << format_double(c.residual) << ',' << format_double(c.tolerance) << ','
       << (c.pass ? "true" : "false") << ','
       << (c.expected_fail ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string emit_text(const Report& rep) {
  std::ostringstream os;
  os << "scenario " << rep.scenario << '\n';
  for (const Check& c : rep.checks) {
    const char* tag = c.pass ? (c.expected_fail ? "EXPECTED-FAIL" : "PASS")
                             : "FAIL";
    os << "  [" << tag << "] " << c.id << "  residual=" << format_double(c.residual)
       << " tol=" << format_double(c.tolerance) << "  (" << c.anchor << ")\n";
  }
  os << (rep.ok() ? "  all checks pass\n" : "  FAILURES present\n");
  return os.str();
}

}  // namespace

std::string emit(const Report& rep, Format f) {
  switch (f) {
    case Format::json: return emit_json(rep);
    case Format::csv: return emit_csv(rep);
    case Format::text: return emit_text(rep);
  }
  return {};
}

}  // namespace llcartan::report
