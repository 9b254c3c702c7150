// Copyright 2026 the qmetro authors
//
// SPDX-License-Identifier: Apache-2.0
//
// Closed-form protocol machinery: the single-probe coherence
//
//   gamma(t) = e^{-i t w_a (h1-h2)/N} [ gamma_r(t) + i k(t).v ],
//
// its omega-derivative by the chain rule through the branch frequencies,
// the N-probe coherence Gamma = gamma^N, the reduced ancilla Bloch vector,
// the protocol QFI, optimal measurement time points (exact common periods or
// continued-fraction approximations), the optimal probe state, and the
// quadratic upper envelope of the QFI peaks.

#ifndef QMETRO_ANALYTIC_HPP_
#define QMETRO_ANALYTIC_HPP_

#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "qmetro/errors.hpp"
#include "qmetro/model.hpp"
#include "qmetro/qfi.hpp"

namespace qmetro::analytic {

using model::AncillaStateSpec;
using model::BlochVector;
using model::ProtocolSpec;
using numkit::cxd;

struct GammaValue {
  cxd value;            // gamma(t), global phase included
  double gamma_r;       // real part before the global phase
  double gamma_i;       // imaginary part before the global phase
  double global_phase;  // -t w_a (h1 - h2) / N
  cxd d_omega;          // analytic d gamma / d omega
};

enum class TimePointKind {
  exact_common_period,
  rational_approximation,
  single_frequency,
};

struct TimePoint {
  double t = 0.0;
  TimePointKind kind = TimePointKind::single_frequency;
  double approximation_error = 0.0;  // time mismatch bound; 0 for exact kinds
};

namespace detail {

// All trigonometric building blocks of gamma(t) and their omega-derivatives,
// evaluated once and shared by every closed form below.
struct GammaParts {
  double mu1, mu2, dmu1, dmu2;
  double gr, dgr;          // state-independent real part
  BlochVector k, dk;       // gamma_i = k.v
  double phase;            // -t w_a (h1 - h2) / N
};

inline GammaParts gamma_parts(const ProtocolSpec& s, double t) {
  GammaParts p;
  p.mu1 = model::mu(s, 1);
  p.mu2 = model::mu(s, 2);
  p.dmu1 = model::mu_domega(s, 1);
  p.dmu2 = model::mu_domega(s, 2);

  const double lw = s.lambda * s.omega;
  const double dlw = s.lambda;
  const double gap2 = s.g * s.g * (s.a1 - s.a2) * (s.a1 - s.a2);

  const double c1 = std::cos(p.mu1 * t), s1 = std::sin(p.mu1 * t);
  const double c2 = std::cos(p.mu2 * t), s2 = std::sin(p.mu2 * t);
  const double dc1 = -s1 * t * p.dmu1, ds1 = c1 * t * p.dmu1;
  const double dc2 = -s2 * t * p.dmu2, ds2 = c2 * t * p.dmu2;

  const double kap_num = p.mu1 * p.mu1 + p.mu2 * p.mu2 - gap2;
  const double kap_den = 2.0 * p.mu1 * p.mu2;
  const double kap = kap_num / kap_den;
  const double dkap =
      (2.0 * (p.mu1 * p.dmu1 + p.mu2 * p.dmu2) * kap_den -
       kap_num * 2.0 * (p.dmu1 * p.mu2 + p.mu1 * p.dmu2)) /
      (kap_den * kap_den);

  p.gr = c1 * c2 + kap * s1 * s2;
  p.dgr = dc1 * c2 + c1 * dc2 + dkap * s1 * s2 + kap * (ds1 * s2 + s1 * ds2);

  const double f1 = s1 / p.mu1, f2 = s2 / p.mu2;
  const double df1 = (ds1 * p.mu1 - s1 * p.dmu1) / (p.mu1 * p.mu1);
  const double df2 = (ds2 * p.mu2 - s2 * p.dmu2) / (p.mu2 * p.mu2);

  const double cm = (c1 * f2 - f1 * c2) * lw;
  const double dcm = (dc1 * f2 + c1 * df2 - df1 * c2 - f1 * dc2) * lw +
                     (c1 * f2 - f1 * c2) * dlw;
  const double cn = (s.a2 * f2 * c1 - s.a1 * f1 * c2) * s.g;
  const double dcn =
      (s.a2 * (df2 * c1 + f2 * dc1) - s.a1 * (df1 * c2 + f1 * dc2)) * s.g;
  const double cmn = f1 * f2 * (s.a1 - s.a2) * s.g * lw;
  const double dcmn = ((df1 * f2 + f1 * df2) * lw + f1 * f2 * dlw) *
                      (s.a1 - s.a2) * s.g;

  const BlochVector mxn = s.m.cross(s.n);
  p.k = cm * s.m + cn * s.n + cmn * mxn;
  p.dk = dcm * s.m + dcn * s.n + dcmn * mxn;
  p.phase = -t * s.omega_a * (s.h1 - s.h2) / s.n_probes;
  return p;
}

struct Convergent {
  std::int64_t p = 0, q = 1;
  double residual = 0.0;  // |x - p/q|
};

// Continued-fraction convergents of x > 0 with denominators up to max_den.
inline std::vector<Convergent> convergents(double x, std::int64_t max_den) {
  std::vector<Convergent> out;
  // h_n = a_n h_{n-1} + h_{n-2} with (p,q)_{-1} = (1,0), (p,q)_{-2} = (0,1).
  std::int64_t p_prev = 0, q_prev = 1, p_cur = 1, q_cur = 0;
  double frac = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_f = std::floor(frac);
    if (a_f > 9e17) break;
    const auto a = static_cast<std::int64_t>(a_f);
    const std::int64_t p_next = a * p_cur + p_prev;
    const std::int64_t q_next = a * q_cur + q_prev;
    if (q_next > max_den) break;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    if (p_cur > 0)
      out.push_back({p_cur, q_cur,
                     std::abs(x - static_cast<double>(p_cur) / q_cur)});
    const double rem = frac - a_f;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  return out;
}

}  // namespace detail

inline BlochVector k_vector(const ProtocolSpec& s, double t) {
  return detail::gamma_parts(s, t).k;
}

inline GammaValue gamma(const ProtocolSpec& s, const BlochVector& v, double t) {
  const auto p = detail::gamma_parts(s, t);
  GammaValue out;
  out.gamma_r = p.gr;
  out.gamma_i = p.k.dot(v);
  out.global_phase = p.phase;
  const cxd phase = std::exp(cxd(0.0, p.phase));
  out.value = phase * cxd(out.gamma_r, out.gamma_i);
  out.d_omega = phase * cxd(p.dgr, p.dk.dot(v));
  return out;
}

struct BigGammaValue {
  cxd value;    // Gamma(t) = gamma(t)^N
  cxd d_omega;  // N gamma^{N-1} dgamma
};

inline BigGammaValue big_gamma(const ProtocolSpec& s, const BlochVector& v,
                               double t) {
  const GammaValue g = gamma(s, v, t);
  const int n = s.n_probes;
  cxd pow_nm1 = 1.0;
  for (int i = 0; i < n - 1; ++i) pow_nm1 *= g.value;
  return {pow_nm1 * g.value, static_cast<double>(n) * pow_nm1 * g.d_omega};
}

// Reduced ancilla Bloch vector and its omega-derivative. r_z = cos(2 alpha)
// is constant in both t and omega.
inline std::pair<BlochVector, BlochVector> ancilla_bloch(
    const ProtocolSpec& s, const BlochVector& v, const AncillaStateSpec& a,
    double t) {
  const BigGammaValue big = big_gamma(s, v, t);
  const double s2a = std::sin(2.0 * a.alpha);
  const double cphi = std::cos(a.phi), sphi = std::sin(a.phi);
  const double gr = big.value.real(), gi = big.value.imag();
  const double dgr = big.d_omega.real(), dgi = big.d_omega.imag();
  BlochVector r{s2a * (gr * cphi - gi * sphi),
                -s2a * (gr * sphi + gi * cphi),
                std::cos(2.0 * a.alpha)};
  BlochVector dr{s2a * (dgr * cphi - dgi * sphi),
                 -s2a * (dgr * sphi + dgi * cphi), 0.0};
  return {r, dr};
}

// Protocol QFI from the reduced ancilla Bloch form. At |Gamma| = 1 the Bloch
// floor reduces it to |dGamma|^2 sin^2(2 alpha) = sin^2(2a) N^2 (d theta)^2.
inline double qfi_protocol(const ProtocolSpec& s, const BlochVector& v,
                           const AncillaStateSpec& a, double t) {
  const auto [r, dr] = ancilla_bloch(s, v, a, t);
  // The analytic |r| can exceed 1 by rounding; clamp inside the ball.
  const double r2 = r.squaredNorm();
  if (r2 > 1.0 && r2 < 1.0 + 1e-12)
    return qfi::qfi_bloch(r / std::sqrt(r2), dr);
  return qfi::qfi_bloch(r, dr);
}

// Reduced peak form N^2 |gamma|^{2N-2} |dgamma|^2. Coincides with the Bloch
// form where |gamma| = 1 and omits its radial term elsewhere.
inline double qfi_reduced_form(const ProtocolSpec& s, const BlochVector& v,
                               double t) {
  const GammaValue g = gamma(s, v, t);
  const double mag2 = std::norm(g.value);
  const int n = s.n_probes;
  double decay = 1.0;
  for (int i = 0; i < n - 1; ++i) decay *= mag2;
  return static_cast<double>(n) * n * decay * std::norm(g.d_omega);
}

// Quadratic upper envelope of the QFI peaks:
//   (a1-a2)^2 t^2 N^2 g^2 lambda^4 w^2 [1 - (m.n)^2] / (mu1^2 mu2^2).
inline double envelope(const ProtocolSpec& s, double t) {
  const double mn = s.m_dot_n();
  const double gap = s.a1 - s.a2;
  const double lw2 = s.lambda * s.lambda * s.omega * s.omega;
  const double m1 = model::mu(s, 1), m2 = model::mu(s, 2);
  const double n2 = static_cast<double>(s.n_probes) * s.n_probes;
  return gap * gap * t * t * n2 * s.g * s.g * s.lambda * s.lambda * lw2 *
         (1.0 - mn * mn) / (m1 * m1 * m2 * m2);
}

// Measurement time points where |gamma| returns to 1: exact common periods
// of mu1 and mu2 when their ratio is rational, continued-fraction
// approximations otherwise.
inline std::vector<TimePoint> optimal_time_points(
    const ProtocolSpec& s, int count, std::int64_t denominator_bound = 64) {
  const double m1 = model::mu(s, 1), m2 = model::mu(s, 2);
  std::vector<TimePoint> out;
  out.reserve(count);

  if (std::abs(m1 - m2) <= 1e-12 * std::max(m1, m2)) {
    for (int k = 1; k <= count; ++k)
      out.push_back({2.0 * M_PI * k / m1, TimePointKind::single_frequency, 0.0});
    return out;
  }

  const double ratio = m1 / m2;
  // Rationality detection: a genuinely rational double ratio p/q with a
  // small q is matched by its convergent to ~1e-16 relative; convergents of
  // irrationals at such small q sit many orders of magnitude further away.
  const auto all = detail::convergents(ratio, 1000000);
  const detail::Convergent* exact = nullptr;
  const detail::Convergent* best = nullptr;
  for (const auto& c : all) {
    if (c.residual < 1e-13 * std::max(1.0, ratio) && c.q <= 4096 && !exact)
      exact = &c;
    if (c.q <= denominator_bound) best = &c;
  }

  if (exact) {
    const double base = 2.0 * M_PI * exact->q / m2;
    for (int k = 1; k <= count; ++k)
      out.push_back(
          {base * k, TimePointKind::exact_common_period, 0.0});
    return out;
  }
  if (!best)
    throw Error("optimal_time_points: no convergent within denominator bound");
  const double base = 2.0 * M_PI * best->q / m2;
  // Phase slip of the mu1 oscillation per base period, as a time mismatch.
  const double t_err = 2.0 * M_PI * best->q * best->residual / m1;
  for (int k = 1; k <= count; ++k)
    out.push_back({base * k, TimePointKind::rational_approximation, t_err * k});
  return out;
}

// Probe Bloch vector maximizing the QFI at a measurement point:
// v = dk/domega (t_p), normalized.
inline BlochVector optimal_probe_bloch(const ProtocolSpec& s,
                                       const TimePoint& tp) {
  const auto parts = detail::gamma_parts(s, tp.t);
  const double norm = parts.dk.norm();
  if (norm <= 1e-12)
    throw ZeroSensitivity(
        "optimal_probe_bloch: dk/domega vanishes at t_p; gamma carries no "
        "omega dependence");
  return parts.dk / norm;
}

}  // namespace qmetro::analytic

#endif  // QMETRO_ANALYTIC_HPP_
