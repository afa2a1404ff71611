#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "llcartan/ambient.hpp"
#include "llcartan/cartan.hpp"
#include "llcartan/report.hpp"

namespace llcartan::scenarios {

/// Flat Lorentz-Minkowski chart in canonical coordinates, time coordinate 0.
lorentz::LorentzChart minkowski_chart(int m, double box = 6.0);

/// The future cone over the round sphere, stereographic spatial chart, with
/// Z the position field (chart coordinate t, s = e^t).
cartan::Immersion model_cone(int m);

/// The degenerate null hyperplane x_0 = x_{m+1} with flat induced metric.
cartan::Immersion flat_null_hyperplane(int m);

struct Overrides {
  std::optional<int> m;
  std::optional<double> c;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> fd_step;
  std::optional<double> tol;  // scales every tolerance when set
};

struct ScenarioInfo {
  std::string name;
  std::string kind;
  std::string summary;
  std::vector<std::string> anchors;
  std::map<std::string, double> defaults;
};

const std::vector<ScenarioInfo>& list_scenarios();

report::Report run_scenario(const std::string& name, const Overrides& ov = {});

/// Runs every registered scenario with the given seed; jobs > 1 evaluates
/// them concurrently, output order stays the registry order.
std::vector<report::Report> verify_all(std::uint64_t seed, int jobs = 1);

}  // namespace llcartan::scenarios
