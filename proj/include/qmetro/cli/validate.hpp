// Copyright 2026 the qmetro authors
//
// SPDX-License-Identifier: Apache-2.0
//
// Closed-form-vs-oracle validation suite: compares every analytic quantity
// against its brute-force counterpart at the configured protocol parameters
// (probe count clamped to 5 so the dense oracle stays cheap) and reports the
// maximum deviation per identity.

#ifndef QMETRO_CLI_VALIDATE_HPP_
#define QMETRO_CLI_VALIDATE_HPP_

#include <cmath>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "qmetro/analytic.hpp"
#include "qmetro/cli/config.hpp"
#include "qmetro/oracle.hpp"

namespace qmetro::cli {

struct CheckResult {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ValidateReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> warnings;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Injection points for negative-control tests: each hook, when set, replaces
// the analytic side of the corresponding check.
struct ValidateHooks {
  std::function<analytic::GammaValue(const ProtocolSpec&, const BlochVector&,
                                     double)>
      gamma_override;
};

inline ValidateReport run_validation(const ExperimentConfig& cfg,
                                     const ValidateHooks& hooks = {}) {
  ValidateReport report;
  ProtocolSpec s = cfg.protocol;
  if (s.n_probes > 5) {
    s.n_probes = 5;
    report.warnings.push_back(
        "probe count clamped to 5 for the dense-oracle comparison");
  }
  const AncillaStateSpec anc =
      cfg.ancilla_optimal ? AncillaStateSpec{} : cfg.ancilla;

  BlochVector v = cfg.probe_bloch;
  bool zero_sensitivity = false;
  if (cfg.probe_optimal) {
    try {
      const auto tps = analytic::optimal_time_points(s, 1);
      v = analytic::optimal_probe_bloch(s, tps.front());
    } catch (const Error& e) {
      zero_sensitivity = true;
      report.warnings.push_back(
          std::string("zero-sensitivity configuration (") + e.what() +
          "); the QFI vanishes identically and the peak check is skipped");
      v = BlochVector{1.0, 0.0, 0.0};
    }
  }

  auto gamma_fn = hooks.gamma_override;
  if (!gamma_fn)
    gamma_fn = [](const ProtocolSpec& sp, const BlochVector& vv, double t) {
      return analytic::gamma(sp, vv, t);
    };

  std::vector<double> grid;
  for (int i = 0; i < 40; ++i) grid.push_back(0.1 + 4.9 * i / 39.0);

  CheckResult coherence{"branch-frequency coherence closed form", 0, 1e-10};
  CheckResult power{"probe-product coherence power law", 0, 1e-9};
  CheckResult bloch{"reduced ancilla Bloch vector", 0, 1e-10};
  CheckResult identity{"coherence normalization identity", 0, 1e-10};
  CheckResult derivative{"frequency derivative vs finite difference", 0, 1e-6};

  for (double t : grid) {
    const auto g = gamma_fn(s, v, t);
    const auto g_direct = oracle::gamma_direct(s, v, t);
    coherence.deviation =
        std::max(coherence.deviation, std::abs(g.value - g_direct));

    numkit::cxd pw = 1.0;
    for (int i = 0; i < s.n_probes; ++i) pw *= g.value;
    power.deviation = std::max(
        power.deviation, std::abs(pw - oracle::big_gamma_direct(s, v, t)));

    const auto [r, dr] = analytic::ancilla_bloch(s, v, anc, t);
    const auto rho =
        oracle::reduced_ancilla(oracle::evolve_joint(s, v, anc, t));
    const BlochVector r_direct{
        2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(),
        (rho(0, 0) - rho(1, 1)).real()};
    bloch.deviation = std::max(bloch.deviation,
                               (r - r_direct).cwiseAbs().maxCoeff());

    const auto parts = analytic::detail::gamma_parts(s, t);
    identity.deviation =
        std::max(identity.deviation,
                 std::abs(parts.gr * parts.gr + parts.k.squaredNorm() - 1.0));

    const double h = qfi::default_fd_step(s.omega);
    ProtocolSpec sp = s, sm = s;
    sp.omega += h;
    sm.omega -= h;
    const numkit::cxd fd =
        (analytic::gamma(sp, v, t).value - analytic::gamma(sm, v, t).value) /
        (2.0 * h);
    derivative.deviation =
        std::max(derivative.deviation,
                 std::abs(g.d_omega - fd) / std::max(1.0, std::abs(fd)));
  }

  report.checks = {coherence, power, bloch, identity, derivative};

  if (!zero_sensitivity) {
    CheckResult peak{"peak QFI touches the quadratic envelope", 0, 1e-2};
    const auto tps = analytic::optimal_time_points(s, 1);
    const double f = analytic::qfi_protocol(s, v, anc, tps.front().t);
    const double env = analytic::envelope(s, tps.front().t);
    peak.deviation = std::abs(f / env - 1.0);
    report.checks.push_back(peak);
  }

  for (auto& c : report.checks) c.pass = c.deviation < c.tolerance;
  return report;
}

inline void print_report(const ValidateReport& report, std::ostream& os) {
  for (const auto& w : report.warnings) os << "warning: " << w << "\n";
  for (const auto& c : report.checks) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-45s max dev %.3e  (tol %.0e)  %s",
                  c.name.c_str(), c.deviation, c.tolerance,
                  c.pass ? "pass" : "FAIL");
    os << buf << "\n";
  }
  os << (report.all_pass() ? "validation passed" : "validation FAILED")
     << "\n";
}

}  // namespace qmetro::cli

#endif  // QMETRO_CLI_VALIDATE_HPP_
