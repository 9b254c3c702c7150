// Copyright 2026 the qmetro authors
//
// SPDX-License-Identifier: Apache-2.0
//
// Brute-force ground truth for the closed forms: full joint Hilbert-space
// evolution, reduced ancilla states, the coherence functions evaluated
// directly through operator exponentials, finite-difference QFI, and a
// dephasing-noise master-equation integrator.
//
// The master equation is integrated with a fixed-step 4th-order Runge-Kutta
// scheme in the rotating frame of the (block-diagonal) total Hamiltonian:
// the unitary part is applied exactly through the spectral decomposition of
// the two ancilla-branch blocks, so the discretization error scales with the
// dissipator strength rather than with the Hamiltonian norm.

#ifndef QMETRO_ORACLE_HPP_
#define QMETRO_ORACLE_HPP_

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qmetro/errors.hpp"
#include "qmetro/model.hpp"
#include "qmetro/numkit.hpp"
#include "qmetro/qfi.hpp"

namespace qmetro::oracle {

using model::AncillaStateSpec;
using model::BlochVector;
using model::ProtocolSpec;
using numkit::ComplexMatrix;
using numkit::StateVector;
using numkit::cxd;

struct JointState {
  StateVector amplitudes;  // probes 1..N then ancilla, dimension 2^(N+1)
  int n_probes = 0;
};

inline StateVector probe_product_state(const BlochVector& v, int n) {
  const StateVector one = model::probe_state(v);
  StateVector psi = StateVector::Ones(1);
  for (int i = 0; i < n; ++i) {
    StateVector next(psi.size() * 2);
    for (Eigen::Index j = 0; j < psi.size(); ++j) {
      next(2 * j) = psi(j) * one(0);
      next(2 * j + 1) = psi(j) * one(1);
    }
    psi = std::move(next);
  }
  return psi;
}

inline StateVector initial_joint_state(const ProtocolSpec& s,
                                       const BlochVector& v,
                                       const AncillaStateSpec& a) {
  const StateVector probes = probe_product_state(v, s.n_probes);
  const StateVector anc = model::ancilla_state(a);
  StateVector psi(probes.size() * 2);
  for (Eigen::Index j = 0; j < probes.size(); ++j) {
    psi(2 * j) = probes(j) * anc(0);
    psi(2 * j + 1) = probes(j) * anc(1);
  }
  return psi;
}

inline JointState evolve_joint(const ProtocolSpec& s, const BlochVector& v,
                               const AncillaStateSpec& a, double t) {
  const ComplexMatrix h = model::total_hamiltonian(s);  // enforces size guard
  return {numkit::evolve_hermitian(h, t, initial_joint_state(s, v, a)),
          s.n_probes};
}

inline ComplexMatrix reduced_ancilla(const JointState& js) {
  const ComplexMatrix rho = js.amplitudes * js.amplitudes.adjoint();
  std::vector<int> dims(js.n_probes + 1, 2);
  return numkit::partial_trace(rho, dims, {js.n_probes});
}

// gamma(t) = <phi| e^{i t theta_2} e^{-i t theta_1} |phi> on one probe.
inline cxd gamma_direct(const ProtocolSpec& s, const BlochVector& v, double t) {
  const StateVector phi = model::probe_state(v);
  const StateVector left = numkit::evolve_hermitian(model::vartheta(s, 2), t, phi);
  const StateVector right = numkit::evolve_hermitian(model::vartheta(s, 1), t, phi);
  return left.dot(right);
}

// Gamma(t) = <psi| e^{i t Theta_2} e^{-i t Theta_1} |psi> on all N probes.
inline cxd big_gamma_direct(const ProtocolSpec& s, const BlochVector& v,
                            double t) {
  if (s.n_probes > model::kMaxProbesJoint)
    throw SizeGuard("big_gamma_direct: n_probes exceeds dense-size guard");
  const StateVector psi = probe_product_state(v, s.n_probes);
  const StateVector left =
      numkit::evolve_hermitian(model::theta_full(s, 2), t, psi);
  const StateVector right =
      numkit::evolve_hermitian(model::theta_full(s, 1), t, psi);
  return left.dot(right);
}

// Finite-difference QFI of the reduced ancilla state over omega.
inline double qfi_numeric(const ProtocolSpec& s, const BlochVector& v,
                          const AncillaStateSpec& a, double t, double h = 0.0) {
  const double step = h > 0.0 ? h : qfi::default_fd_step(s.omega);
  ProtocolSpec plus = s, minus = s;
  plus.omega += step;
  minus.omega -= step;
  const ComplexMatrix rho = reduced_ancilla(evolve_joint(s, v, a, t));
  const ComplexMatrix drho =
      (reduced_ancilla(evolve_joint(plus, v, a, t)) -
       reduced_ancilla(evolve_joint(minus, v, a, t))) /
      (2.0 * step);
  return qfi::qfi_mixed(rho, drho);
}

// 2 * rho_01 of a qubit density matrix: the coherence the noisy closed form
// predicts as R^N.
inline cxd extract_offdiag(const ComplexMatrix& rho_a) {
  if (rho_a.rows() != 2 || rho_a.cols() != 2)
    throw DimensionMismatch("extract_offdiag: expected a 2x2 density matrix");
  return 2.0 * rho_a(0, 1);
}

enum class DissipatorVariant {
  probes_only,        // sigma_z on each probe
  probes_and_ancilla  // sigma_z on each probe and on the ancilla
};

struct LindbladConfig {
  double gamma_noise = 0.0;  // rate of each sigma_z dissipator
  DissipatorVariant variant = DissipatorVariant::probes_only;
  double max_step = 0.0;  // 0 = automatic (0.01 / frequency scale)
};

inline constexpr int kMaxProbesLindblad = 8;

namespace detail {

// Generic dense fixed-step RK4 on d rho/dt = -i[H, rho] + gamma sum_k D[L_k].
// Reference path for cross-checks; the production path below is the
// rotating-frame block integrator.
inline std::vector<ComplexMatrix> lindblad_dense_rk4(
    const ComplexMatrix& h, const std::vector<ComplexMatrix>& ls, double gamma,
    const ComplexMatrix& rho0, const std::vector<double>& t_grid, double step) {
  auto rhs = [&](const ComplexMatrix& rho) {
    ComplexMatrix hr = h * rho;
    ComplexMatrix out = cxd(0.0, -1.0) * (hr - ComplexMatrix(hr.adjoint()));
    for (const auto& l : ls)
      out += gamma * (l * rho * l.adjoint() -
                      0.5 * (l.adjoint() * l * rho + rho * l.adjoint() * l));
    return out;
  };
  std::vector<ComplexMatrix> out;
  out.reserve(t_grid.size());
  ComplexMatrix rho = rho0;
  double t_cur = 0.0;
  for (double t_next : t_grid) {
    const double span = t_next - t_cur;
    const int n_steps = std::max(1, static_cast<int>(std::ceil(span / step)));
    const double hh = span / n_steps;
    for (int i = 0; i < n_steps && span > 0.0; ++i) {
      const ComplexMatrix k1 = rhs(rho);
      const ComplexMatrix k2 = rhs(rho + 0.5 * hh * k1);
      const ComplexMatrix k3 = rhs(rho + 0.5 * hh * k2);
      const ComplexMatrix k4 = rhs(rho + hh * k3);
      rho += (hh / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    t_cur = t_next;
    out.push_back(rho);
  }
  return out;
}

}  // namespace detail

// Joint density matrices at the requested grid times under the dephasing
// master equation. The grid must be ascending and start at t >= 0.
inline std::vector<ComplexMatrix> lindblad_evolve(
    const ProtocolSpec& s, const BlochVector& v, const AncillaStateSpec& a,
    const LindbladConfig& cfg, const std::vector<double>& t_grid) {
  if (s.n_probes > kMaxProbesLindblad)
    throw SizeGuard("lindblad_evolve: n_probes exceeds dense-size guard");
  if (cfg.gamma_noise < 0.0)
    throw InvalidSpec("gamma_noise", "must be non-negative");
  for (size_t i = 0; i < t_grid.size(); ++i)
    if (t_grid[i] < 0.0 || (i > 0 && t_grid[i] < t_grid[i - 1]))
      throw Error("lindblad_evolve: time grid must be ascending and >= 0");

  const int n = s.n_probes;
  const long pdim = 1L << n;
  const ComplexMatrix h = model::total_hamiltonian(s);

  // The ancilla is the last factor, so H splits into two probe-space blocks.
  ComplexMatrix hb[2];
  for (int b = 0; b < 2; ++b) {
    hb[b].resize(pdim, pdim);
    for (long i = 0; i < pdim; ++i)
      for (long j = 0; j < pdim; ++j) hb[b](i, j) = h(2 * i + b, 2 * j + b);
  }
  const auto eig1 = numkit::hermitian_eig(hb[0]);
  const auto eig2 = numkit::hermitian_eig(hb[1]);
  const numkit::EigDecomposition* eig[2] = {&eig1, &eig2};

  // sigma_z parity of probe i at probe-space index p.
  auto parity = [n](long p, int i) {
    return ((p >> (n - 1 - i)) & 1L) ? -1.0 : 1.0;
  };
  // Probe dissipator mask: sum_i s_i(p) s_i(q) - N, elementwise on each block.
  Eigen::MatrixXd probe_mask(pdim, pdim);
  for (long p = 0; p < pdim; ++p)
    for (long q = 0; q < pdim; ++q) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += parity(p, i) * parity(q, i);
      probe_mask(p, q) = sum - n;
    }
  const bool anc_deph = cfg.variant == DissipatorVariant::probes_and_ancilla;

  // Rotating frame per block pair (b, c): rho_bc = V_b e^{-i L_b t} sigma
  // e^{i L_c t} V_c^dag, with sigma the slow variable integrated by RK4.
  struct Block {
    int b, c;
    Eigen::MatrixXd delta;     // lambda_b(i) - lambda_c(j)
    ComplexMatrix frame;       // e^{-i delta t} at the current step start
    ComplexMatrix half, full;  // e^{-i delta h/2}, e^{-i delta h}
    ComplexMatrix sigma;
  };
  std::vector<Block> blocks;
  for (auto [b, c] : {std::pair{0, 0}, {1, 1}, {0, 1}}) {
    Block blk;
    blk.b = b;
    blk.c = c;
    blk.delta.resize(pdim, pdim);
    for (long i = 0; i < pdim; ++i)
      for (long j = 0; j < pdim; ++j)
        blk.delta(i, j) = eig[b]->eigenvalues(i) - eig[c]->eigenvalues(j);
    blocks.push_back(std::move(blk));
  }

  const StateVector psi0 = initial_joint_state(s, v, a);
  for (auto& blk : blocks) {
    ComplexMatrix rho_bc(pdim, pdim);
    for (long i = 0; i < pdim; ++i)
      for (long j = 0; j < pdim; ++j)
        rho_bc(i, j) = psi0(2 * i + blk.b) * std::conj(psi0(2 * j + blk.c));
    blk.sigma = eig[blk.b]->eigenvectors.adjoint() * rho_bc *
                eig[blk.c]->eigenvectors;
  }

  auto phases = [&](const Eigen::MatrixXd& delta, double t) {
    return delta.unaryExpr(
        [t](double d) { return std::exp(cxd(0.0, -d * t)); });
  };

  // Dissipator of one block in the rotating frame. `frame_now` is
  // e^{-i delta (t0 + offset)} for the stage being evaluated.
  auto block_rhs = [&](const Block& blk, const ComplexMatrix& sigma,
                       const ComplexMatrix& frame_now) {
    ComplexMatrix rho_bc = frame_now.cwiseProduct(sigma);
    rho_bc = eig[blk.b]->eigenvectors * rho_bc *
             eig[blk.c]->eigenvectors.adjoint();
    ComplexMatrix w = cfg.gamma_noise * probe_mask.cwiseProduct(rho_bc);
    if (anc_deph && blk.b != blk.c) w -= 2.0 * cfg.gamma_noise * rho_bc;
    w = eig[blk.b]->eigenvectors.adjoint() * w * eig[blk.c]->eigenvectors;
    return ComplexMatrix(frame_now.conjugate().cwiseProduct(w));
  };

  // Frequency scale for the automatic step: the dissipator is the only
  // integrated term, but its rotating-frame oscillation runs at the spread
  // of Hamiltonian gaps.
  double freq_scale = 1.0;
  for (const auto& blk : blocks)
    freq_scale = std::max(freq_scale, blk.delta.cwiseAbs().maxCoeff());
  const double auto_step = 0.05 / std::max(freq_scale, cfg.gamma_noise);
  const double step = cfg.max_step > 0.0 ? cfg.max_step : auto_step;
  if (!(step > 0.0) || !std::isfinite(step))
    throw IntegratorFailure("lindblad_evolve: invalid step size");

  std::vector<ComplexMatrix> out;
  out.reserve(t_grid.size());
  double t_cur = 0.0;
  for (double t_next : t_grid) {
    const double span = t_next - t_cur;
    const int n_steps = std::max(1, static_cast<int>(std::ceil(span / step)));
    const double hh = span / n_steps;
    if (span > 0.0) {
      for (auto& blk : blocks) {
        // Recompute the frame from absolute time at every span start so
        // phase error does not accumulate across output points.
        blk.frame = phases(blk.delta, t_cur);
        blk.half = phases(blk.delta, hh / 2.0);
        blk.full = blk.half.cwiseProduct(blk.half);
      }
      for (int i = 0; i < n_steps; ++i) {
        for (auto& blk : blocks) {
          const ComplexMatrix f0 = blk.frame;
          const ComplexMatrix f1 = f0.cwiseProduct(blk.half);
          const ComplexMatrix f2 = f0.cwiseProduct(blk.full);
          const ComplexMatrix k1 = block_rhs(blk, blk.sigma, f0);
          const ComplexMatrix k2 =
              block_rhs(blk, blk.sigma + 0.5 * hh * k1, f1);
          const ComplexMatrix k3 =
              block_rhs(blk, blk.sigma + 0.5 * hh * k2, f1);
          const ComplexMatrix k4 = block_rhs(blk, blk.sigma + hh * k3, f2);
          blk.sigma += (hh / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
          blk.frame = f2;
        }
      }
    }
    t_cur = t_next;

    ComplexMatrix rho = ComplexMatrix::Zero(2 * pdim, 2 * pdim);
    for (const auto& blk : blocks) {
      ComplexMatrix rho_bc = phases(blk.delta, t_cur).cwiseProduct(blk.sigma);
      rho_bc = eig[blk.b]->eigenvectors * rho_bc *
               eig[blk.c]->eigenvectors.adjoint();
      for (long i = 0; i < pdim; ++i)
        for (long j = 0; j < pdim; ++j) {
          rho(2 * i + blk.b, 2 * j + blk.c) = rho_bc(i, j);
          if (blk.b != blk.c)
            rho(2 * j + blk.c, 2 * i + blk.b) = std::conj(rho_bc(i, j));
        }
    }
    out.push_back(std::move(rho));
  }
  return out;
}

}  // namespace qmetro::oracle

#endif  // QMETRO_ORACLE_HPP_
