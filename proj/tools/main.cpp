// Command line front end: scenario catalog, single runs, and the full
// verification sweep with machine-readable reports.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "llcartan/scenarios.hpp"

namespace {

using llcartan::report::Format;
using llcartan::scenarios::Overrides;

struct CommonOpts {
  std::string format = "text";
  std::string out;
  std::string config;
  int jobs = 1;
  Overrides ov;
};

Format parse_format(const std::string& f) {
  if (f == "json") return Format::json;
  if (f == "csv") return Format::csv;
  return Format::text;
}

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--samples", o.ov.samples, "sample count override");
  cmd->add_option("--seed", o.ov.seed, "random seed");
  cmd->add_option("--fd-step", o.ov.fd_step, "finite difference step");
  cmd->add_option("--tol", o.ov.tol, "tolerance scale factor");
  cmd->add_option("--format", o.format, "json|csv|text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--out", o.out, "write the report to this path");
  cmd->add_option("--config", o.config,
                  "JSON file with the same keys as the flags; flags win");
  cmd->add_option("--jobs", o.jobs, "concurrent scenario runs");
}

// Fills unset overrides from the config file.
void apply_config(CommonOpts& o, const CLI::App* cmd) {
  if (o.config.empty()) return;
  std::ifstream in(o.config);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + o.config);
  nlohmann::json j;
  in >> j;
  auto unset = [cmd](const char* flag) { return cmd->count(flag) == 0; };
  if (j.contains("m") && unset("--m")) o.ov.m = j["m"].get<int>();
  if (j.contains("c") && unset("--c")) o.ov.c = j["c"].get<double>();
  if (j.contains("samples") && unset("--samples"))
    o.ov.samples = j["samples"].get<int>();
  if (j.contains("seed") && unset("--seed"))
    o.ov.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("fd_step") && unset("--fd-step"))
    o.ov.fd_step = j["fd_step"].get<double>();
  if (j.contains("tol") && unset("--tol")) o.ov.tol = j["tol"].get<double>();
  if (j.contains("format") && unset("--format"))
    o.format = j["format"].get<std::string>();
  if (j.contains("jobs") && unset("--jobs")) o.jobs = j["jobs"].get<int>();
}

int write_out(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    return 2;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lightlike Cartan geometry verification suite"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "print the scenario catalog");

  CommonOpts run_opts;
  std::string scenario;
  auto* run = app.add_subcommand("run", "run one scenario");
  run->add_option("scenario", scenario, "scenario name")->required();
  run->add_option("--m", run_opts.ov.m, "screen dimension");
  run->add_option("--c", run_opts.ov.c, "ambient linear coefficient");
  add_common(run, run_opts);

  CommonOpts all_opts;
  auto* all = app.add_subcommand("verify-all", "run every scenario");
  add_common(all, all_opts);

  try {
    app.parse(argc, argv);

    if (list->parsed()) {
      for (const auto& s : llcartan::scenarios::list_scenarios()) {
        std::cout << s.name << "  (" << s.kind << ")\n    " << s.summary
                  << "\n    defaults:";
        for (const auto& [k, v] : s.defaults)
          std::cout << ' ' << k << '=' << llcartan::report::format_double(v);
        std::cout << "\n    verifies:\n";
        for (const auto& a : s.anchors) std::cout << "      - " << a << '\n';
      }
      return 0;
    }

    if (run->parsed()) {
      apply_config(run_opts, run);
      const auto rep = llcartan::scenarios::run_scenario(scenario, run_opts.ov);
      const int rc =
          write_out(llcartan::report::emit(rep, parse_format(run_opts.format)),
                    run_opts.out);
      return rc != 0 ? rc : (rep.ok() ? 0 : 1);
    }

    apply_config(all_opts, all);
    const auto reps = llcartan::scenarios::verify_all(
        all_opts.ov.seed.value_or(42), all_opts.jobs);
    std::string text;
    bool ok = true;
    const Format f = parse_format(all_opts.format);
    for (const auto& rep : reps) {
      text += llcartan::report::emit(rep, f);
      ok = ok && rep.ok();
    }
    const int rc = write_out(text, all_opts.out);
    return rc != 0 ? rc : (ok ? 0 : 1);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
