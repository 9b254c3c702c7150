// Copyright 2026 the qmetro authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "qmetro/analytic.hpp"
#include "qmetro/oracle.hpp"
#include "test_support.hpp"

using namespace qmetro;
using model::AncillaStateSpec;
using model::BlochVector;
using model::ProtocolSpec;
using numkit::cxd;

namespace {

// Reference parameters: N=3, w=1, w_a=2, g=1, lambda=1, m=(0,0,1), n=(1,0,0).
ProtocolSpec reference_spec() { return model::validate(ProtocolSpec{}); }

ProtocolSpec tilted_spec(double mn) {
  ProtocolSpec s;
  s.n = BlochVector{std::sqrt(1.0 - mn * mn), 0.0, mn};
  return model::validate(s);
}

}  // namespace

TEST_CASE("k vector vanishes at t=0 and for g=0") {
  auto rng = testing::make_rng(41);
  const ProtocolSpec s = testing::random_spec(rng, 3);
  REQUIRE(analytic::k_vector(s, 0.0).norm() < 1e-14);

  ProtocolSpec free = reference_spec();
  free.g = 0.0;
  for (double t : {0.3, 1.7, 4.2})
    REQUIRE(analytic::k_vector(free, t).norm() < 1e-13);
}

TEST_CASE("imaginary part of the coherence is linear in the probe vector") {
  const ProtocolSpec s = reference_spec();
  const double t = 0.3;
  const BlochVector k = analytic::k_vector(s, t);
  auto rng = testing::make_rng(42);
  for (int i = 0; i < 20; ++i) {
    const BlochVector v = testing::random_unit_vector(rng);
    const cxd direct = oracle::gamma_direct(s, v, t);
    const auto g = analytic::gamma(s, v, t);
    // Strip the global branch phase before comparing components.
    const cxd unphased = direct * std::exp(cxd(0.0, -g.global_phase));
    REQUIRE(unphased.imag() == Catch::Approx(k.dot(v)).margin(1e-12));
  }
}

TEST_CASE("coherence closed form vs operator-exponential evaluation") {
  const ProtocolSpec ref = reference_spec();
  const BlochVector vy{0.0, 1.0, 0.0};
  REQUIRE(std::abs(analytic::gamma(ref, vy, 0.7).value -
                   oracle::gamma_direct(ref, vy, 0.7)) < 1e-10);

  auto rng = testing::make_rng(43);
  std::uniform_real_distribution<double> uni(0.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const ProtocolSpec s = testing::random_spec(rng, 3);
    const BlochVector v = testing::random_unit_vector(rng);
    const double t = uni(rng);
    const auto g = analytic::gamma(s, v, t);
    REQUIRE(std::abs(g.value - oracle::gamma_direct(s, v, t)) < 1e-10);
    REQUIRE(std::abs(g.value) <= 1.0 + 1e-12);
    REQUIRE(g.gamma_r * g.gamma_r + g.gamma_i * g.gamma_i ==
            Catch::Approx(std::norm(g.value)).margin(1e-12));
  }
}

TEST_CASE("coherence special values") {
  auto rng = testing::make_rng(44);
  const ProtocolSpec s = testing::random_spec(rng, 2);
  const BlochVector v = testing::random_unit_vector(rng);
  const auto g0 = analytic::gamma(s, v, 0.0);
  REQUIRE(std::abs(g0.value - cxd(1.0)) < 1e-14);
  REQUIRE(std::abs(g0.d_omega) < 1e-14);

  // Aligned axes: the branch generators commute, omega cancels from the
  // relative evolution, and the coherence carries no frequency dependence.
  ProtocolSpec aligned = reference_spec();
  aligned.n = aligned.m;
  aligned.g = 0.5;  // keep mu_2 away from zero
  aligned = model::validate(aligned);
  for (double t : {0.4, 1.3, 3.7}) {
    const auto g = analytic::gamma(aligned, v, t);
    REQUIRE(std::abs(g.d_omega) < 1e-12);
  }
}

TEST_CASE("normalization identity over random draws") {
  auto rng = testing::make_rng(45);
  std::uniform_real_distribution<double> uni(0.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const ProtocolSpec s = testing::random_spec(rng, 1);
    const auto p = analytic::detail::gamma_parts(s, uni(rng));
    REQUIRE(std::abs(p.gr * p.gr + p.k.squaredNorm() - 1.0) < 1e-10);
  }
}

TEST_CASE("analytic frequency derivative matches finite differences") {
  auto rng = testing::make_rng(46);
  std::uniform_real_distribution<double> uni(0.0, 4.0);
  for (int i = 0; i < 100; ++i) {
    const ProtocolSpec s = testing::random_spec(rng, 3);
    const BlochVector v = testing::random_unit_vector(rng);
    const double t = uni(rng);
    const auto g = analytic::gamma(s, v, t);
    const double h = 1e-6;
    ProtocolSpec sp = s, sm = s;
    sp.omega += h;
    sm.omega -= h;
    const cxd fd = (analytic::gamma(sp, v, t).value -
                    analytic::gamma(sm, v, t).value) /
                   (2.0 * h);
    REQUIRE(std::abs(g.d_omega - fd) / std::max(1.0, std::abs(fd)) < 1e-6);
  }
}

TEST_CASE("N-probe coherence is the single-probe power") {
  auto rng = testing::make_rng(47);
  const BlochVector v = testing::random_unit_vector(rng);
  const ProtocolSpec s1 = testing::random_spec(rng, 1);
  const auto big1 = analytic::big_gamma(s1, v, 1.1);
  const auto g1 = analytic::gamma(s1, v, 1.1);
  REQUIRE(std::abs(big1.value - g1.value) < 1e-14);
  REQUIRE(std::abs(big1.d_omega - g1.d_omega) < 1e-14);

  for (int trial = 0; trial < 20; ++trial) {
    const ProtocolSpec s = testing::random_spec(rng, 3);
    const double t = 0.2 + 0.2 * trial;
    const auto big = analytic::big_gamma(s, v, t);
    REQUIRE(std::abs(big.value - oracle::big_gamma_direct(s, v, t)) < 1e-9);
    REQUIRE(std::abs(big.value) <= 1.0 + 1e-12);
  }
}

TEST_CASE("reduced ancilla Bloch vector vs partial trace") {
  auto rng = testing::make_rng(48);
  std::uniform_real_distribution<double> uni(0.0, 2 * M_PI);
  for (int i = 0; i < 20; ++i) {
    const ProtocolSpec s = testing::random_spec(rng, 2);
    const BlochVector v = testing::random_unit_vector(rng);
    const AncillaStateSpec a{uni(rng) / 2.0, uni(rng)};
    const double t = 0.3 + 0.2 * i;
    const auto [r, dr] = analytic::ancilla_bloch(s, v, a, t);
    REQUIRE(r.norm() <= 1.0 + 1e-12);
    REQUIRE(r.z() == Catch::Approx(std::cos(2.0 * a.alpha)).margin(1e-12));
    REQUIRE(dr.z() == 0.0);

    const auto rho = oracle::reduced_ancilla(oracle::evolve_joint(s, v, a, t));
    const BlochVector r_direct{2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(),
                               (rho(0, 0) - rho(1, 1)).real()};
    REQUIRE((r - r_direct).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("ancilla eigenstate input freezes the reduced state") {
  const ProtocolSpec s = reference_spec();
  const BlochVector v{0.0, 1.0, 0.0};
  for (double t : {0.5, 2.0}) {
    const auto [r, dr] = analytic::ancilla_bloch(s, v, {0.0, 0.0}, t);
    REQUIRE((r - BlochVector{0.0, 0.0, 1.0}).norm() < 1e-14);
    REQUIRE(dr.norm() < 1e-14);
    REQUIRE(analytic::qfi_protocol(s, v, {0.0, 0.0}, t) ==
            Catch::Approx(0.0).margin(1e-16));
  }
}

TEST_CASE("optimal ancilla angle exposes the coherence directly") {
  auto rng = testing::make_rng(49);
  const ProtocolSpec s = testing::random_spec(rng, 3);
  const BlochVector v = testing::random_unit_vector(rng);
  const auto big = analytic::big_gamma(s, v, 1.3);
  const auto [r, dr] = analytic::ancilla_bloch(s, v, {M_PI / 4, 0.0}, 1.3);
  REQUIRE(r.x() == Catch::Approx(big.value.real()).margin(1e-13));
  REQUIRE(r.y() == Catch::Approx(-big.value.imag()).margin(1e-13));
  REQUIRE(r.z() == Catch::Approx(0.0).margin(1e-13));
}

TEST_CASE("protocol QFI vanishes in the zero-information cases") {
  const BlochVector v{0.0, 1.0, 0.0};
  ProtocolSpec free = reference_spec();
  free.g = 0.0;
  ProtocolSpec aligned = reference_spec();
  aligned.n = aligned.m;
  aligned.g = 0.5;
  aligned = model::validate(aligned);
  for (double t = 0.2; t < 5.0; t += 0.2) {
    REQUIRE(analytic::qfi_protocol(free, v, {M_PI / 4, 0.0}, t) < 1e-16);
    REQUIRE(analytic::qfi_protocol(aligned, v, {M_PI / 4, 0.0}, t) < 1e-16);
    REQUIRE(analytic::qfi_protocol(reference_spec(), v, {0.0, 0.0}, t) <
            1e-16);
  }
}

TEST_CASE("reference peak value") {
  // At t_p = sqrt(2) pi with the optimal states: lambda^2 N^2 t_p^2.
  const ProtocolSpec s = reference_spec();
  const auto tps = analytic::optimal_time_points(s, 1);
  const double tp = tps.front().t;
  REQUIRE(tp == Catch::Approx(2.0 * M_PI / std::sqrt(2.0)).epsilon(1e-12));
  const BlochVector v = analytic::optimal_probe_bloch(s, tps.front());
  const double f = analytic::qfi_protocol(s, v, {M_PI / 4, 0.0}, tp);
  REQUIRE(f == Catch::Approx(9.0 * tp * tp).epsilon(1e-9));
  REQUIRE(f == Catch::Approx(2.0 * M_PI * M_PI * 9.0).epsilon(1e-9));
}

TEST_CASE("time points for equal branch frequencies") {
  const ProtocolSpec s = reference_spec();  // mu1 = mu2 = sqrt(2)
  const auto tps = analytic::optimal_time_points(s, 3);
  REQUIRE(tps.size() == 3);
  for (int k = 0; k < 3; ++k) {
    REQUIRE(tps[k].kind == analytic::TimePointKind::single_frequency);
    REQUIRE(tps[k].t ==
            Catch::Approx(2.0 * M_PI * (k + 1) / std::sqrt(2.0)));
    REQUIRE(tps[k].approximation_error == 0.0);
    const BlochVector v = analytic::optimal_probe_bloch(s, tps[k]);
    REQUIRE(std::abs(analytic::gamma(s, v, tps[k].t).value) ==
            Catch::Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("time points for an exactly rational frequency ratio") {
  // m.n = 0.6, g = lambda w = 1: mu1 = sqrt(2.2+1.2)... chosen so
  // mu1/mu2 = 2 exactly: mu1^2 = 2+1.2 = 3.2, mu2^2 = 2-1.2 = 0.8.
  const ProtocolSpec s = tilted_spec(0.6);
  const double m1 = model::mu(s, 1), m2 = model::mu(s, 2);
  REQUIRE(m1 / m2 == Catch::Approx(2.0).epsilon(1e-14));
  const auto tps = analytic::optimal_time_points(s, 2);
  REQUIRE(tps.front().kind == analytic::TimePointKind::exact_common_period);
  REQUIRE(tps.front().t == Catch::Approx(2.0 * M_PI / m2).epsilon(1e-12));
  REQUIRE(tps.front().approximation_error == 0.0);
  const BlochVector v = analytic::optimal_probe_bloch(s, tps.front());
  REQUIRE(std::abs(analytic::gamma(s, v, tps.front().t).value) ==
          Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("time points for an irrational frequency ratio") {
  // m.n = 0.5: mu1/mu2 = sqrt(3), approximated by convergents.
  const ProtocolSpec s = tilted_spec(0.5);
  const auto tps = analytic::optimal_time_points(s, 2, 64);
  REQUIRE(tps.front().kind ==
          analytic::TimePointKind::rational_approximation);
  REQUIRE(tps.front().approximation_error > 0.0);
  REQUIRE(tps.front().t == Catch::Approx(2.0 * M_PI * 56.0).epsilon(1e-12));
  for (const auto& tp : tps) {
    const BlochVector v = analytic::optimal_probe_bloch(s, tp);
    REQUIRE(std::abs(analytic::gamma(s, v, tp.t).value) >= 0.999);
  }
}

TEST_CASE("optimal probe vector properties") {
  const ProtocolSpec s = reference_spec();
  const auto tps = analytic::optimal_time_points(s, 1);
  const BlochVector v = analytic::optimal_probe_bloch(s, tps.front());
  REQUIRE(v.norm() == Catch::Approx(1.0).epsilon(1e-12));
  // Lies in span{m, n, m x n} = all of R^3 here, but for the reference spec
  // the derivative is along -n.
  REQUIRE(std::abs(std::abs(v.dot(s.n)) - 1.0) < 1e-9);

  // Aligned axes carry no frequency information at the periodic points.
  ProtocolSpec aligned = reference_spec();
  aligned.n = aligned.m;
  aligned.g = 0.5;
  aligned = model::validate(aligned);
  const auto atps = analytic::optimal_time_points(aligned, 1);
  REQUIRE_THROWS_AS(analytic::optimal_probe_bloch(aligned, atps.front()),
                    ZeroSensitivity);
}

TEST_CASE("envelope closed form") {
  const ProtocolSpec s = reference_spec();
  REQUIRE(analytic::envelope(s, 10.0) == Catch::Approx(900.0).epsilon(1e-12));

  ProtocolSpec aligned = reference_spec();
  aligned.n = aligned.m;
  aligned.g = 0.5;
  aligned = model::validate(aligned);
  REQUIRE(analytic::envelope(aligned, 3.0) == Catch::Approx(0.0).margin(1e-14));

  // g != lambda w with m.n = 0: 4 t^2 N^2 g^2 (lw)^4 ... /(g^2+(lw)^2)^2
  // with lw = 1: 4 t^2 N^2 g^2 / (g^2+1)^2.
  ProtocolSpec uneven = reference_spec();
  uneven.g = 0.7;
  const double t = 2.5;
  const double expect = 4.0 * t * t * 9.0 * 0.49 / std::pow(0.49 + 1.0, 2.0);
  REQUIRE(analytic::envelope(uneven, t) == Catch::Approx(expect).epsilon(1e-12));
}

TEST_CASE("QFI peaks touch the envelope and never exceed it") {
  const ProtocolSpec s = reference_spec();
  const auto tps = analytic::optimal_time_points(s, 3);
  const AncillaStateSpec a{M_PI / 4, 0.0};
  for (const auto& tp : tps) {
    const BlochVector v = analytic::optimal_probe_bloch(s, tp);
    const double ratio = analytic::qfi_protocol(s, v, a, tp.t) /
                         analytic::envelope(s, tp.t);
    REQUIRE(ratio == Catch::Approx(1.0).margin(1e-6));
  }
  // The quadratic envelope is an envelope of the peaks, not a pointwise
  // bound; the true pointwise bound is the unitary generator limit
  // 4 lambda^2 N^2 t^2 (eigenvalue spread 2 lambda N of the frequency
  // derivative of the Hamiltonian).
  const BlochVector v = analytic::optimal_probe_bloch(s, tps.front());
  for (double t = 0.05; t < 14.0; t += 0.05) {
    REQUIRE(analytic::qfi_protocol(s, v, a, t) <=
            4.0 * 9.0 * t * t * (1.0 + 1e-9));
  }
}

TEST_CASE("quadratic scaling in probe count and in time") {
  const AncillaStateSpec a{M_PI / 4, 0.0};
  ProtocolSpec s = reference_spec();
  const auto tps = analytic::optimal_time_points(s, 10);
  const BlochVector v = analytic::optimal_probe_bloch(s, tps.front());

  // Slope in log N at fixed t_p.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int n = 1; n <= 8; ++n) {
    s.n_probes = n;
    const double x = std::log(n);
    const double y =
        std::log(analytic::qfi_protocol(s, v, a, tps.front().t));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope_n = (8 * sxy - sx * sy) / (8 * sxx - sx * sx);
  REQUIRE(slope_n == Catch::Approx(2.0).margin(0.01));

  // Slope in log t over successive peaks at fixed N = 3.
  s.n_probes = 3;
  sx = sy = sxx = sxy = 0;
  for (const auto& tp : tps) {
    const BlochVector vk = analytic::optimal_probe_bloch(s, tp);
    const double x = std::log(tp.t);
    const double y = std::log(analytic::qfi_protocol(s, vk, a, tp.t));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const int m = static_cast<int>(tps.size());
  const double slope_t = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  REQUIRE(slope_t == Catch::Approx(2.0).margin(0.01));
}

TEST_CASE("reduced peak form coincides with the exact QFI at peaks") {
  const ProtocolSpec s = reference_spec();
  const auto tps = analytic::optimal_time_points(s, 2);
  const AncillaStateSpec a{M_PI / 4, 0.0};
  for (const auto& tp : tps) {
    const BlochVector v = analytic::optimal_probe_bloch(s, tp);
    const double exact = analytic::qfi_protocol(s, v, a, tp.t);
    const double reduced = analytic::qfi_reduced_form(s, v, tp.t);
    REQUIRE(reduced == Catch::Approx(exact).epsilon(1e-8));
  }
  // Off-peak the reduced form under-reports (it omits the radial term).
  const BlochVector v = analytic::optimal_probe_bloch(s, tps.front());
  const double t_off = tps.front().t * 0.62;
  REQUIRE(analytic::qfi_reduced_form(s, v, t_off) <=
          analytic::qfi_protocol(s, v, a, t_off) + 1e-9);
}
