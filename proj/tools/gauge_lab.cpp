// Command-line front end: run a JSON scenario config, verify the whole
// catalog, or list it.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gaugelab/cli/scenario.hpp"
#include "gaugelab/core/error.hpp"

namespace cli = gaugelab::cli;

namespace {

void summarize(const cli::Report& report) {
  std::size_t failed = 0;
  for (const auto& r : report.records) {
    if (r.pass) continue;
    ++failed;
    std::fprintf(stderr, "FAIL %s/%s/%s residual=%g tolerance=%g %s\n", r.scenario.c_str(), r.experiment.c_str(),
                 r.quantity.c_str(), r.residual, r.tolerance, r.note.c_str());
  }
  std::fprintf(stderr, "%zu records, %zu failed: %s\n", report.records.size(), failed,
               report.overall_pass() ? "PASS" : "FAIL");
}

cli::Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gaugelab::InvalidInput("cannot open config '" + path + "'");
  try {
    return cli::Json::parse(in);
  } catch (const cli::Json::parse_error& e) {
    throw gaugelab::InvalidInput(std::string("config is not valid JSON: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauge-invariance laboratory"};
  app.require_subcommand(1);

  std::string out_dir;
  std::string format = "json";
  double tol_scale = 1.0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "Output directory (default: config output_dir or gauge_lab_out)");
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--tol-scale", tol_scale, "Multiplies every tolerance")->check(CLI::PositiveNumber);
  };

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the experiments of one scenario config");
  run->add_option("config", config_path, "JSON scenario config")->required();
  add_common(run);

  auto* verify = app.add_subcommand("verify-all", "Every catalog scenario with every catalog gauge");
  add_common(verify);

  app.add_subcommand("catalog", "Print scenarios, gauges and parameter schemas as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("catalog")) {
      std::cout << cli::list_catalog().dump(2) << "\n";
      return 0;
    }

    const cli::Format fmt = cli::parse_format(format);
    cli::Report report;
    if (run->parsed()) {
      cli::ScenarioConfig cfg = cli::parse_config(read_json(config_path));
      cfg.tolerances.scale *= tol_scale;
      if (out_dir.empty()) out_dir = cfg.output_dir;
      report = cli::run_scenario(cfg);
    } else {
      if (out_dir.empty()) out_dir = "gauge_lab_out";
      report = cli::verify_all(tol_scale);
    }
    cli::emit_report(report, out_dir, fmt);
    summarize(report);
    return report.overall_pass() ? 0 : 1;
  } catch (const gaugelab::InvalidInput& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
