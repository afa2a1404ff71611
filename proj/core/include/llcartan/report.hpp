#pragma once

#include <map>
#include <string>
#include <vector>

namespace llcartan::report {

struct Check {
  std::string id;
  /// Short statement of the verified property.
  std::string anchor;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  /// Negative result predicted by theory; counted as a pass when it holds.
  bool expected_fail = false;
};

struct Report {
  std::string scenario;
  std::map<std::string, double> parameters;
  std::vector<Check> checks;
  std::map<std::string, double> environment;
  /// Reported as 0 by default so serialized reports stay byte-stable.
  double wall_time_ms = 0.0;

  bool ok() const;
  /// pass = residual <= tolerance; expected_fail only marks checks whose
  /// content is a predicted negative result (the residual then measures how
  /// decisively the failure shows up).
  Check& add(std::string id, std::string anchor, double residual,
             double tolerance, bool expected_fail = false);
};

enum class Format { json, csv, text };

/// 17 significant digits, locale-independent; stable across runs.
std::string format_double(double v);

std::string emit(const Report& rep, Format f);

}  // namespace llcartan::report
