// Copyright 2026 the qmetro authors
//
// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration: a flat `section.key = value` plain-text format
// (# comments, blank lines ignored) mapped onto one sweep description.
// Defaults reproduce the noiseless three-probe reference experiment.

#ifndef QMETRO_CLI_CONFIG_HPP_
#define QMETRO_CLI_CONFIG_HPP_

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qmetro/errors.hpp"
#include "qmetro/model.hpp"
#include "qmetro/oracle.hpp"

namespace qmetro::cli {

using model::AncillaStateSpec;
using model::BlochVector;
using model::ProtocolSpec;

enum class SweepAxis { time, probes, noise_rate, total_time };

enum class Method { analytic, oracle, eq33, envelope, noise_analytic };

struct TimeGrid {
  double start = 0.0;
  double stop = 15.0;
  int steps = 601;
};

struct NoiseConfig {
  bool enabled = false;
  double gamma_noise = 1e-3;
  oracle::DissipatorVariant variant = oracle::DissipatorVariant::probes_only;
};

struct OutputConfig {
  std::string csv;
  std::string svg;
  int precision = 12;  // significant decimal digits in CSV floats
};

struct ExperimentConfig {
  ProtocolSpec protocol;  // defaults: w=1, w_a=2, g=1, lambda=1, N=3, m.n=0
  bool probe_optimal = true;
  BlochVector probe_bloch{1.0, 0.0, 0.0};  // used when !probe_optimal
  bool ancilla_optimal = true;
  AncillaStateSpec ancilla;  // used when !ancilla_optimal
  TimeGrid time_grid;
  SweepAxis axis = SweepAxis::time;
  std::vector<double> sweep_values;  // optional explicit grid override
  NoiseConfig noise;
  std::vector<Method> methods{Method::analytic, Method::oracle, Method::eq33,
                              Method::envelope};
  OutputConfig output;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& v, int line) {
  size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": expected a number, got '" + v + "'");
  }
  if (pos != v.size())
    throw ParseError("line " + std::to_string(line) + ": trailing characters in number '" + v + "'");
  return out;
}

inline int parse_int(const std::string& v, int line) {
  const double d = parse_double(v, line);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d)
    throw ParseError("line " + std::to_string(line) + ": expected an integer, got '" + v + "'");
  return i;
}

inline bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError("line " + std::to_string(line) + ": expected a boolean, got '" + v + "'");
}

inline std::vector<std::string> split(const std::string& v, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

inline BlochVector parse_vec3(const std::string& v, int line) {
  const auto parts = split(v, ',');
  if (parts.size() != 3)
    throw ParseError("line " + std::to_string(line) + ": expected 'x,y,z', got '" + v + "'");
  return {parse_double(parts[0], line), parse_double(parts[1], line),
          parse_double(parts[2], line)};
}

inline Method parse_method(const std::string& v, int line) {
  if (v == "analytic") return Method::analytic;
  if (v == "oracle") return Method::oracle;
  if (v == "eq33") return Method::eq33;
  if (v == "envelope") return Method::envelope;
  if (v == "noise-analytic") return Method::noise_analytic;
  throw ParseError("line " + std::to_string(line) + ": unknown method '" + v + "'");
}

}  // namespace detail

inline ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    std::string s = raw;
    const auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = detail::trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(line) + ": expected 'key = value'");
    const std::string key = detail::trim(s.substr(0, eq));
    const std::string val = detail::trim(s.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ParseError("line " + std::to_string(line) + ": empty key or value");

    auto& p = cfg.protocol;
    if (key == "protocol.omega") p.omega = detail::parse_double(val, line);
    else if (key == "protocol.omega_a") p.omega_a = detail::parse_double(val, line);
    else if (key == "protocol.g") p.g = detail::parse_double(val, line);
    else if (key == "protocol.lambda") p.lambda = detail::parse_double(val, line);
    else if (key == "protocol.m") p.m = detail::parse_vec3(val, line);
    else if (key == "protocol.n") p.n = detail::parse_vec3(val, line);
    else if (key == "protocol.a1") p.a1 = detail::parse_double(val, line);
    else if (key == "protocol.a2") p.a2 = detail::parse_double(val, line);
    else if (key == "protocol.h1") p.h1 = detail::parse_double(val, line);
    else if (key == "protocol.h2") p.h2 = detail::parse_double(val, line);
    else if (key == "protocol.n_probes") p.n_probes = detail::parse_int(val, line);
    else if (key == "probe_bloch") {
      if (val == "optimal") {
        cfg.probe_optimal = true;
      } else {
        cfg.probe_optimal = false;
        cfg.probe_bloch = detail::parse_vec3(val, line);
      }
    } else if (key == "ancilla") {
      if (val != "optimal")
        throw ParseError("line " + std::to_string(line) + ": 'ancilla' accepts only 'optimal'");
      cfg.ancilla_optimal = true;
    } else if (key == "ancilla.alpha") {
      cfg.ancilla_optimal = false;
      cfg.ancilla.alpha = detail::parse_double(val, line);
    } else if (key == "ancilla.phi") {
      cfg.ancilla_optimal = false;
      cfg.ancilla.phi = detail::parse_double(val, line);
    } else if (key == "time_grid.start") {
      cfg.time_grid.start = detail::parse_double(val, line);
    } else if (key == "time_grid.stop") {
      cfg.time_grid.stop = detail::parse_double(val, line);
    } else if (key == "time_grid.steps") {
      cfg.time_grid.steps = detail::parse_int(val, line);
    } else if (key == "sweep.axis") {
      if (val == "time") cfg.axis = SweepAxis::time;
      else if (val == "probes") cfg.axis = SweepAxis::probes;
      else if (val == "noise-rate") cfg.axis = SweepAxis::noise_rate;
      else if (val == "total-time") cfg.axis = SweepAxis::total_time;
      else throw ParseError("line " + std::to_string(line) + ": unknown sweep axis '" + val + "'");
    } else if (key == "sweep.values") {
      cfg.sweep_values.clear();
      for (const auto& item : detail::split(val, ','))
        cfg.sweep_values.push_back(detail::parse_double(item, line));
      if (cfg.sweep_values.empty())
        throw ParseError("line " + std::to_string(line) + ": sweep.values must be non-empty");
    } else if (key == "noise.enabled") {
      cfg.noise.enabled = detail::parse_bool(val, line);
    } else if (key == "noise.gamma_noise") {
      cfg.noise.gamma_noise = detail::parse_double(val, line);
    } else if (key == "noise.variant") {
      if (val == "probes-only")
        cfg.noise.variant = oracle::DissipatorVariant::probes_only;
      else if (val == "probes-and-ancilla")
        cfg.noise.variant = oracle::DissipatorVariant::probes_and_ancilla;
      else
        throw ParseError("line " + std::to_string(line) + ": unknown noise variant '" + val + "'");
    } else if (key == "methods") {
      cfg.methods.clear();
      for (const auto& item : detail::split(val, ','))
        cfg.methods.push_back(detail::parse_method(item, line));
    } else if (key == "output.csv") {
      cfg.output.csv = val;
    } else if (key == "output.svg") {
      cfg.output.svg = val;
    } else if (key == "output.precision") {
      cfg.output.precision = detail::parse_int(val, line);
    } else {
      throw ParseError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }

  cfg.protocol = model::validate(cfg.protocol);
  if (!(cfg.time_grid.stop > cfg.time_grid.start))
    throw ParseError("time_grid: stop must exceed start");
  if (cfg.time_grid.steps < 2)
    throw ParseError("time_grid: steps must be at least 2");
  if (cfg.methods.empty())
    throw ParseError("methods: at least one method is required");
  if (cfg.output.precision < 1 || cfg.output.precision > 17)
    throw ParseError("output.precision: must be in [1, 17]");
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace qmetro::cli

#endif  // QMETRO_CLI_CONFIG_HPP_
