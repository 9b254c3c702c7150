// Copyright 2026 the qmetro authors
//
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: config-driven sweeps with CSV/SVG artifacts,
// closed-form-vs-oracle validation, canned figure reproductions, and a
// measurement-point table.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qmetro/analytic.hpp"
#include "qmetro/cli/config.hpp"
#include "qmetro/cli/log.hpp"
#include "qmetro/cli/svg.hpp"
#include "qmetro/cli/sweep.hpp"
#include "qmetro/cli/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

// Three-probe reference experiment: orthogonal axes, commensurate branch
// frequencies handled by the time-point machinery.
constexpr const char* kFig2aConfig = R"(
protocol.n_probes = 3
protocol.omega = 1
protocol.omega_a = 2
protocol.g = 1
protocol.lambda = 1
protocol.m = 0,0,1
protocol.n = 1,0,0
time_grid.start = 0
time_grid.stop = 15
time_grid.steps = 601
methods = analytic,oracle,eq33,envelope
output.csv = fig2a.csv
output.svg = fig2a.svg
)";

// Tilted-axes variant: the branch-frequency ratio is irrational, so the
// measurement points come from continued-fraction approximations.
constexpr const char* kFig2bConfig = R"(
protocol.n_probes = 3
protocol.omega = 1
protocol.omega_a = 2
protocol.g = 1
protocol.lambda = 1
protocol.m = 0,0,1
protocol.n = 0.8660254037844386,0,0.5
time_grid.start = 0
time_grid.stop = 360
time_grid.steps = 1801
methods = analytic,oracle,eq33,envelope
output.csv = fig2b.csv
output.svg = fig2b.svg
)";

// Segmented strategy under dephasing over a growing time budget.
constexpr const char* kFig3Config = R"(
protocol.n_probes = 10
protocol.omega = 1
protocol.omega_a = 2
protocol.g = 1
protocol.lambda = 1
protocol.m = 0,0,1
protocol.n = 1,0,0
protocol.h1 = 0
protocol.h2 = 0
sweep.axis = total-time
time_grid.start = 40
time_grid.stop = 400
time_grid.steps = 361
noise.enabled = true
noise.gamma_noise = 1e-3
methods = noise-analytic,envelope
output.csv = fig3.csv
output.svg = fig3.svg
)";

int run_sweep(const qmetro::cli::ExperimentConfig& cfg, int jobs,
              const std::string& csv_override,
              const std::string& fig_override,
              qmetro::cli::FigureStyle style) {
  const auto result = qmetro::cli::run_experiment(cfg, jobs);
  const std::string csv_path =
      !csv_override.empty() ? csv_override
      : !cfg.output.csv.empty() ? cfg.output.csv
                                : std::string("sweep.csv");
  qmetro::cli::emit_csv(result, csv_path, cfg.output.precision);
  qmetro::cli::log(qmetro::cli::LogLevel::info, "wrote " + csv_path);
  const std::string fig_path =
      !fig_override.empty() ? fig_override : cfg.output.svg;
  if (!fig_path.empty()) {
    qmetro::cli::emit_figure(result, fig_path, style);
    qmetro::cli::log(qmetro::cli::LogLevel::info, "wrote " + fig_path);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probe-ancilla frequency-estimation toolkit"};
  app.require_subcommand(1);

  std::string config_path, csv_path, fig_path;
  int jobs = 0, count = 5;
  std::string variant = "a";

  auto* sweep = app.add_subcommand("sweep", "run a config-driven grid sweep");
  sweep->add_option("--config", config_path, "experiment config file")
      ->required();
  sweep->add_option("--jobs", jobs, "worker count (default: all cores)");
  sweep->add_option("--csv", csv_path, "override CSV output path");
  sweep->add_option("--fig", fig_path, "override SVG output path");

  auto* validate =
      app.add_subcommand("validate", "closed-form vs oracle validation");
  validate->add_option("--config", config_path, "experiment config file")
      ->required();

  auto* fig2 = app.add_subcommand("fig2", "reproduce the noiseless QFI figure");
  fig2->add_option("--variant", variant, "a (orthogonal) or b (tilted axes)")
      ->check(CLI::IsMember({"a", "b"}));

  auto* fig3 =
      app.add_subcommand("fig3", "reproduce the segmented-strategy figure");

  auto* points = app.add_subcommand(
      "optimal-points", "print measurement time points and probe states");
  points->add_option("--config", config_path, "experiment config file")
      ->required();
  points->add_option("--count", count, "number of time points");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) {
      const auto cfg = qmetro::cli::load_config(config_path);
      return run_sweep(cfg, jobs, csv_path, fig_path,
                       qmetro::cli::FigureStyle::lines);
    }
    if (validate->parsed()) {
      const auto cfg = qmetro::cli::load_config(config_path);
      const auto report = qmetro::cli::run_validation(cfg);
      qmetro::cli::print_report(report, std::cout);
      return report.all_pass() ? kExitOk : kExitValidation;
    }
    if (fig2->parsed()) {
      const auto cfg = qmetro::cli::parse_config(
          variant == "a" ? kFig2aConfig : kFig2bConfig);
      return run_sweep(cfg, jobs, "", "",
                       qmetro::cli::FigureStyle::lines_with_peak_markers);
    }
    if (fig3->parsed()) {
      const auto cfg = qmetro::cli::parse_config(kFig3Config);
      return run_sweep(cfg, jobs, "", "", qmetro::cli::FigureStyle::lines);
    }
    if (points->parsed()) {
      const auto cfg = qmetro::cli::load_config(config_path);
      const auto tps =
          qmetro::analytic::optimal_time_points(cfg.protocol, count);
      std::printf("%-4s %-18s %-24s %-12s %s\n", "k", "t_p", "kind",
                  "t_error", "probe Bloch vector");
      for (size_t i = 0; i < tps.size(); ++i) {
        const char* kind =
            tps[i].kind == qmetro::analytic::TimePointKind::exact_common_period
                ? "exact-common-period"
            : tps[i].kind ==
                    qmetro::analytic::TimePointKind::rational_approximation
                ? "rational-approximation"
                : "single-frequency";
        std::string bloch = "(zero sensitivity)";
        try {
          const auto v =
              qmetro::analytic::optimal_probe_bloch(cfg.protocol, tps[i]);
          char buf[96];
          std::snprintf(buf, sizeof(buf), "(%.6f, %.6f, %.6f)", v.x(), v.y(),
                        v.z());
          bloch = buf;
        } catch (const qmetro::ZeroSensitivity&) {
        }
        std::printf("%-4zu %-18.12g %-24s %-12.3e %s\n", i + 1, tps[i].t, kind,
                    tps[i].approximation_error, bloch.c_str());
      }
      return kExitOk;
    }
  } catch (const qmetro::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qmetro::InvalidSpec& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qmetro::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const qmetro::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
