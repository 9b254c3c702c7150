// Copyright 2026 the qmetro authors
//
// SPDX-License-Identifier: Apache-2.0
//
// Grid sweeps over the closed forms and the brute-force oracle, CSV
// persistence, and the sweep scheduler. Grid points are pure computations;
// they are statically partitioned across a worker pool and reassembled in
// grid order, so output is deterministic for a fixed config regardless of
// the worker count.

#ifndef QMETRO_CLI_SWEEP_HPP_
#define QMETRO_CLI_SWEEP_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qmetro/analytic.hpp"
#include "qmetro/cli/config.hpp"
#include "qmetro/cli/log.hpp"
#include "qmetro/errors.hpp"
#include "qmetro/noise.hpp"
#include "qmetro/oracle.hpp"

namespace qmetro::cli {

struct SweepRow {
  double coord = 0.0;
  std::vector<std::optional<double>> values;  // one slot per value column
  std::string status = "ok";                  // ok | degenerate | skipped
};

struct SweepResult {
  std::string schema_version = "1";
  std::string axis_name;
  std::vector<std::string> columns;  // value columns, excluding coord/status
  std::vector<SweepRow> rows;
  double elapsed_seconds = 0.0;  // timing metadata; never serialized
};

namespace detail {

inline std::vector<double> grid_values(const ExperimentConfig& cfg) {
  if (!cfg.sweep_values.empty()) return cfg.sweep_values;
  std::vector<double> out(cfg.time_grid.steps);
  const double span = cfg.time_grid.stop - cfg.time_grid.start;
  for (int i = 0; i < cfg.time_grid.steps; ++i)
    out[i] = cfg.time_grid.start + span * i / (cfg.time_grid.steps - 1);
  return out;
}

// Probe/ancilla states actually used by the sweep, resolving "optimal".
inline std::pair<BlochVector, AncillaStateSpec> resolve_states(
    const ExperimentConfig& cfg) {
  AncillaStateSpec a = cfg.ancilla_optimal ? AncillaStateSpec{} : cfg.ancilla;
  BlochVector v = cfg.probe_bloch;
  if (cfg.probe_optimal) {
    try {
      const auto tps = analytic::optimal_time_points(cfg.protocol, 1);
      v = analytic::optimal_probe_bloch(cfg.protocol, tps.front());
    } catch (const Error& e) {
      log(LogLevel::warn,
          std::string("optimal probe state unavailable (") + e.what() +
              "); falling back to +x");
      v = BlochVector{1.0, 0.0, 0.0};
    }
  }
  return {v, a};
}

}  // namespace detail

inline SweepResult run_experiment(const ExperimentConfig& cfg, int jobs = 0) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepResult result;
  const std::vector<double> grid = detail::grid_values(cfg);
  const auto [probe_v, anc] = detail::resolve_states(cfg);

  const bool noise_axes = cfg.axis == SweepAxis::noise_rate ||
                          cfg.axis == SweepAxis::total_time;
  for (Method m : cfg.methods)
    if (noise_axes && m != Method::noise_analytic && m != Method::envelope)
      throw InvalidSpec("methods",
                        "noise-rate/total-time sweeps support only "
                        "noise-analytic and envelope");

  // Noise closed forms need the optimized interaction configuration; build
  // the NoiseSpec up front so a bad config fails before the sweep starts.
  std::optional<noise::NoiseSpec> ns;
  const bool wants_noise =
      cfg.noise.enabled ||
      std::find(cfg.methods.begin(), cfg.methods.end(),
                Method::noise_analytic) != cfg.methods.end();
  if (wants_noise && cfg.axis != SweepAxis::noise_rate)
    ns = noise::make_noise_spec(cfg.protocol, cfg.noise.gamma_noise);

  // Value columns in canonical order, restricted to requested methods.
  struct Col {
    Method method;
    std::string name;
  };
  std::vector<Col> cols;
  auto requested = [&](Method m) {
    return std::find(cfg.methods.begin(), cfg.methods.end(), m) !=
           cfg.methods.end();
  };
  const bool total_time_axis = cfg.axis == SweepAxis::total_time;
  if (requested(Method::analytic)) cols.push_back({Method::analytic, "qfi_analytic"});
  if (requested(Method::oracle)) cols.push_back({Method::oracle, "qfi_oracle"});
  if (requested(Method::eq33)) cols.push_back({Method::eq33, "qfi_eq33"});
  if (requested(Method::noise_analytic))
    cols.push_back({Method::noise_analytic,
                    total_time_axis ? "qfi_segmented" : "qfi_noise"});
  if (requested(Method::envelope)) cols.push_back({Method::envelope, "envelope"});

  switch (cfg.axis) {
    case SweepAxis::time: result.axis_name = "t"; break;
    case SweepAxis::probes: result.axis_name = "n_probes"; break;
    case SweepAxis::noise_rate: result.axis_name = "gamma_noise"; break;
    case SweepAxis::total_time: result.axis_name = "total_time"; break;
  }
  for (const auto& c : cols) result.columns.push_back(c.name);

  auto compute_row = [&](double coord) {
    SweepRow row;
    row.coord = coord;
    row.values.assign(cols.size(), std::nullopt);

    ProtocolSpec s = cfg.protocol;
    double t = cfg.time_grid.stop;  // fixed time for non-time axes
    std::optional<noise::NoiseSpec> ns_pt = ns;
    switch (cfg.axis) {
      case SweepAxis::time:
      case SweepAxis::total_time:
        t = coord;
        break;
      case SweepAxis::probes:
        s.n_probes = static_cast<int>(std::lround(coord));
        if (ns_pt) ns_pt->base.n_probes = s.n_probes;
        break;
      case SweepAxis::noise_rate:
        try {
          ns_pt = noise::make_noise_spec(s, coord);
        } catch (const InvalidSpec&) {
          row.values.assign(cols.size(), std::nullopt);
          row.status = "degenerate";
          return row;
        }
        break;
    }

    bool any_skipped = false;
    try {
      for (size_t i = 0; i < cols.size(); ++i) {
        switch (cols[i].method) {
          case Method::analytic:
            row.values[i] = analytic::qfi_protocol(s, probe_v, anc, t);
            break;
          case Method::oracle:
            if (s.n_probes > model::kMaxProbesJoint) {
              any_skipped = true;
            } else {
              row.values[i] = oracle::qfi_numeric(s, probe_v, anc, t);
            }
            break;
          case Method::eq33:
            row.values[i] = analytic::qfi_reduced_form(s, probe_v, t);
            break;
          case Method::noise_analytic: {
            if (cfg.axis == SweepAxis::total_time) {
              row.values[i] =
                  noise::segmented_qfi(*ns_pt, s.n_probes, t);
              break;
            }
            const double t_eval =
                cfg.axis == SweepAxis::noise_rate
                    ? noise::t_opt(*ns_pt, s.n_probes).numeric
                    : t;
            try {
              const auto r = noise::r_perturbative(*ns_pt, t_eval);
              row.values[i] =
                  noise::qfi_noisy(r.value, r.d_omega, s.n_probes);
            } catch (const DomainError&) {
              any_skipped = true;  // |R| = 1 boundary (t = 0)
            }
            break;
          }
          case Method::envelope:
            if (cfg.axis == SweepAxis::total_time) {
              // Linear large-budget trend of the segmented strategy.
              row.values[i] = 2.0 * ns_pt->base.lambda * ns_pt->base.lambda *
                              s.n_probes * t /
                              (5.0 * M_E * M_E * ns_pt->gamma_noise);
            } else if (ns_pt) {
              row.values[i] = noise::f_env(*ns_pt, s.n_probes, t);
            } else {
              row.values[i] = analytic::envelope(s, t);
            }
            break;
        }
      }
    } catch (const DegenerateFrequency&) {
      row.values.assign(cols.size(), std::nullopt);
      row.status = "degenerate";
      return row;
    } catch (const InvalidSpec&) {
      row.values.assign(cols.size(), std::nullopt);
      row.status = "degenerate";
      return row;
    } catch (const SizeGuard&) {
      any_skipped = true;
    } catch (const RangeGuard&) {
      any_skipped = true;
    }
    if (any_skipped) row.status = "skipped";
    return row;
  };

  result.rows.resize(grid.size());
  int n_jobs = jobs > 0 ? jobs
                        : static_cast<int>(std::max(
                              1u, std::thread::hardware_concurrency()));
  n_jobs = std::min<int>(n_jobs, static_cast<int>(grid.size()));
  if (n_jobs <= 1) {
    for (size_t i = 0; i < grid.size(); ++i)
      result.rows[i] = compute_row(grid[i]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_jobs);
    for (int w = 0; w < n_jobs; ++w)
      pool.emplace_back([&, w] {
        for (size_t i = w; i < grid.size(); i += n_jobs)
          result.rows[i] = compute_row(grid[i]);
      });
    for (auto& th : pool) th.join();
  }

  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  log(LogLevel::info, "sweep: " + std::to_string(grid.size()) + " points in " +
                          std::to_string(result.elapsed_seconds) + " s");
  return result;
}

namespace detail {

inline std::string format_double(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

}  // namespace detail

inline std::string csv_string(const SweepResult& result, int precision = 12) {
  std::string out;
  out += "# schema=" + result.schema_version +
         "; time in 1/omega, qfi in 1/omega^2\n";
  out += result.axis_name;
  for (const auto& c : result.columns) out += "," + c;
  out += ",status\n";
  for (const auto& row : result.rows) {
    out += detail::format_double(row.coord, precision);
    for (const auto& v : row.values) {
      out += ",";
      if (v) out += detail::format_double(*v, precision);
    }
    out += "," + row.status + "\n";
  }
  return out;
}

inline void emit_csv(const SweepResult& result, const std::string& path,
                     int precision = 12) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << csv_string(result, precision);
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace qmetro::cli

#endif  // QMETRO_CLI_SWEEP_HPP_
