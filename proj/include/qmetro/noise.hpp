// Copyright 2026 the qmetro authors
//
// SPDX-License-Identifier: Apache-2.0
//
// Closed forms for the dephasing-noise regime of the protocol, valid in the
// optimized interaction configuration m.n = 0, g = lambda*omega:
// the first-order-in-gamma single-probe coherence R(t), the noisy QFI built
// from R and its frequency derivative, the QFI upper envelope
//
//   f_env = lambda^2 N^2 t^2 4^{1-N} e^{-6 gamma N t} (e^{gamma t}+1)^{2N-2},
//
// its maximizing interrogation time t_op = 2/(5 N gamma), the decay-rate
// threshold below which the strategy beats the standard quantum limit, and
// the segmented (restart) strategy that accumulates one envelope maximum per
// segment of length t_op.

#ifndef QMETRO_NOISE_HPP_
#define QMETRO_NOISE_HPP_

#include <cmath>
#include <complex>

#include "qmetro/errors.hpp"
#include "qmetro/model.hpp"

namespace qmetro::noise {

using model::ProtocolSpec;
using numkit::cxd;

struct NoiseSpec {
  ProtocolSpec base;
  double gamma_noise = 0.0;
  double omega_big = 0.0;  // sqrt(g^2 + lambda^2 omega^2), cached
};

inline NoiseSpec make_noise_spec(const ProtocolSpec& base,
                                 double gamma_noise) {
  ProtocolSpec s = model::validate(base);
  if (std::abs(s.m_dot_n()) >= 1e-10)
    throw InvalidSpec("m.n", "noisy closed forms require m.n = 0");
  if (std::abs(s.g - s.lambda * s.omega) >= 1e-10)
    throw InvalidSpec("g", "noisy closed forms require g = lambda*omega");
  if (!(gamma_noise > 0.0))
    throw InvalidSpec("gamma_noise", "must be positive");
  const double ob = std::hypot(s.g, s.lambda * s.omega);
  return {s, gamma_noise, ob};
}

struct RValue {
  cxd value;
  cxd d_omega;  // analytic dR/d omega
};

// First-order-in-gamma single-probe coherence. The frequency enters only
// through Omega, so dR/d omega = dR/d Omega * (lambda^2 omega / Omega).
inline RValue r_perturbative(const NoiseSpec& ns, double t) {
  const double g = ns.base.g;
  const double gam = ns.gamma_noise;
  if (gam * t > 10.0)
    throw RangeGuard("r_perturbative: gamma*t > 10 is outside the regime "
                     "where the first-order expansion is meaningful");
  const double w = ns.omega_big;
  const double w2 = w * w, w3 = w2 * w, w5 = w2 * w3, w6 = w5 * w;
  const double g2 = g * g;
  const cxd i(0.0, 1.0);

  const double e0 = std::exp(-4.0 * gam * t * (g2 + w2) / w2);
  const double e1 = std::exp(4.0 * gam * t);
  const double e2 = std::exp(6.0 * gam * g2 * t / w2);
  const double c = std::cos(2.0 * t * w);
  const double s = std::sin(2.0 * t * w);

  const cxd p = e1 * (w2 - g2) + g * e2 * (g * c - i * w * s);
  const cxd q = -2.0 * i * e1 * w * (w2 - g2) +
                e2 * (g * (4.0 * w2 - 3.0 * g2) * s +
                      2.0 * i * w * (w2 - g2) * c);
  const cxd value = e0 * p / w2 + gam * g * e0 * q / w5;

  // d/dOmega of every factor (e1 does not depend on Omega).
  const double de0 = e0 * 8.0 * gam * t * g2 / w3;
  const double de2 = -e2 * 12.0 * gam * g2 * t / w3;
  const double dc = -2.0 * t * s;
  const double ds = 2.0 * t * c;
  const cxd dp = e1 * 2.0 * w +
                 g * (de2 * (g * c - i * w * s) +
                      e2 * (g * dc - i * (s + w * ds)));
  const cxd dq = -2.0 * i * e1 * (3.0 * w2 - g2) +
                 de2 * (g * (4.0 * w2 - 3.0 * g2) * s +
                        2.0 * i * w * (w2 - g2) * c) +
                 e2 * (g * (8.0 * w * s + (4.0 * w2 - 3.0 * g2) * ds) +
                       2.0 * i * ((3.0 * w2 - g2) * c +
                                  w * (w2 - g2) * dc));
  const cxd dr_domega_big = (de0 * p + e0 * dp) / w2 - 2.0 * e0 * p / w3 +
                            gam * g * ((de0 * q + e0 * dq) / w5 -
                                       5.0 * e0 * q / w6);
  const double chain = ns.base.lambda * ns.base.lambda * ns.base.omega / w;
  return {value, dr_domega_big * chain};
}

// QFI of the ancilla state whose coherence is R^N:
//   N^2 |R|^{2N-4} [Re(R* dR)^2 / (1 - |R|^{2N}) + Im(R* dR)^2].
// Equivalent to the qubit Bloch form on r = (Re R^N, -Im R^N, 0).
inline double qfi_noisy(cxd r, cxd dr, int n) {
  const double mod = std::abs(r);
  if (mod >= 1.0)
    throw DomainError("qfi_noisy: requires |R| < 1");
  const cxd u = std::conj(r) * dr;
  const double a = u.real(), b = u.imag();
  const double rho = std::pow(mod, 2 * n);  // |R|^{2N} < 1
  const double prefac = static_cast<double>(n) * n *
                        std::pow(mod, 2 * n - 4);
  return prefac * (a * a / (1.0 - rho) + b * b);
}

namespace detail {

inline double f_env_direct(double lambda, double gamma, int n, double t) {
  const double osc = std::pow(4.0, 1 - n) * std::exp(-6.0 * gamma * n * t) *
                     std::pow(std::exp(gamma * t) + 1.0, 2 * n - 2);
  return lambda * lambda * n * static_cast<double>(n) * t * t * osc;
}

inline double f_env_log(double lambda, double gamma, int n, double t) {
  if (t == 0.0) return 0.0;
  const double log_osc = (1 - n) * std::log(4.0) - 6.0 * gamma * n * t +
                         (2 * n - 2) * std::log1p(std::exp(gamma * t));
  return lambda * lambda * n * static_cast<double>(n) * t * t *
         std::exp(log_osc);
}

}  // namespace detail

// Upper envelope of the noisy QFI. Exponent accumulation in log-space above
// N = 30, where the 4^{1-N} and (e^{gamma t}+1)^{2N-2} factors individually
// leave double range.
inline double f_env(const NoiseSpec& ns, int n, double t) {
  if (t < 0.0) throw RangeGuard("f_env: t must be non-negative");
  const double lambda = ns.base.lambda;
  return n > 30 ? detail::f_env_log(lambda, ns.gamma_noise, n, t)
                : detail::f_env_direct(lambda, ns.gamma_noise, n, t);
}

struct OptimalTime {
  double formula = 0.0;  // 2 / (5 N gamma), the large-N expansion
  double numeric = 0.0;  // golden-section argmax of f_env
};

inline OptimalTime t_opt(const NoiseSpec& ns, int n) {
  if (n < 1) throw InvalidSpec("n", "must be at least 1");
  OptimalTime out;
  out.formula = 2.0 / (5.0 * n * ns.gamma_noise);
  double lo = out.formula / 10.0, hi = out.formula * 10.0;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f_env(ns, n, x1), f2 = f_env(ns, n, x2);
  for (int iter = 0; iter < 200 && hi - lo > 1e-12 * out.formula; ++iter) {
    if (f1 > f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f_env(ns, n, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f_env(ns, n, x2);
    }
  }
  out.numeric = 0.5 * (lo + hi);
  return out;
}

// Envelope value at t_op: 4 lambda^2 e^{-9/(25 N) - 2} / (25 gamma^2).
inline double f_env_max(double lambda, double gamma_noise, int n) {
  if (!(gamma_noise > 0.0))
    throw InvalidSpec("gamma_noise", "must be positive");
  return 4.0 * lambda * lambda *
         std::exp(-9.0 / (25.0 * n) - 2.0) /
         (25.0 * gamma_noise * gamma_noise);
}

// Decay rates below 4 sqrt(2) lambda omega / (5 pi N) beat the standard
// quantum limit under the segmented strategy.
inline double gamma_threshold(double lambda, double omega, int n) {
  if (!(lambda > 0.0) || !(omega > 0.0) || n < 1)
    throw InvalidSpec("gamma_threshold", "inputs must be positive");
  return 4.0 * std::sqrt(2.0) * lambda * omega / (5.0 * M_PI * n);
}

// Total QFI of the restart strategy over a time budget T: one envelope
// maximum per full segment of length t_op; budgets below one segment fall
// back to the single-shot envelope. Leftover time shorter than a segment is
// discarded (fresh restarts cannot bank partial segments).
inline double segmented_qfi(const NoiseSpec& ns, int n, double total_time) {
  if (!(total_time > 0.0))
    throw RangeGuard("segmented_qfi: total_time must be positive");
  const double t_op = 2.0 / (5.0 * n * ns.gamma_noise);
  if (total_time >= t_op * (1.0 - 1e-12)) {
    const double m = std::floor(total_time / t_op + 1e-9);
    return m * f_env_max(ns.base.lambda, ns.gamma_noise, n);
  }
  return f_env(ns, n, total_time);
}

}  // namespace qmetro::noise

#endif  // QMETRO_NOISE_HPP_
