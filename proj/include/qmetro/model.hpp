// Copyright 2026 the qmetro authors
//
// SPDX-License-Identifier: Apache-2.0
//
// Protocol parameter set, Hamiltonian construction, and initial states for
// the probe-ancilla frequency-estimation protocol.
//
// The joint system is N identical qubit probes coupled to one qubit ancilla:
//
//   H_tot = lambda*omega * sum_i m.sigma^(i)  +  omega_a * H_a
//           + g * (sum_i n.sigma^(i)) (x) A,
//
// with H_a = diag(h1, h2) and A = diag(a1, a2) in the ancilla eigenbasis
// {|a1>, |a2>} = {|0>, |1>}. Kronecker order: probe 1 leftmost, ancilla last.

#ifndef QMETRO_MODEL_HPP_
#define QMETRO_MODEL_HPP_

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "qmetro/errors.hpp"
#include "qmetro/numkit.hpp"

namespace qmetro::model {

using numkit::ComplexMatrix;
using numkit::StateVector;
using numkit::cxd;
using BlochVector = Eigen::Vector3d;

inline constexpr int kMaxProbesKronSum = 12;  // theta_full dense-size guard
inline constexpr int kMaxProbesJoint = 10;    // 2^(N+1) joint dense guard

inline const ComplexMatrix& pauli_x() {
  static const ComplexMatrix m = (ComplexMatrix(2, 2) << 0, 1, 1, 0).finished();
  return m;
}
inline const ComplexMatrix& pauli_y() {
  static const ComplexMatrix m =
      (ComplexMatrix(2, 2) << 0, cxd(0, -1), cxd(0, 1), 0).finished();
  return m;
}
inline const ComplexMatrix& pauli_z() {
  static const ComplexMatrix m = (ComplexMatrix(2, 2) << 1, 0, 0, -1).finished();
  return m;
}

// v . sigma
inline ComplexMatrix bloch_operator(const BlochVector& v) {
  return v.x() * pauli_x() + v.y() * pauli_y() + v.z() * pauli_z();
}

struct ProtocolSpec {
  double omega = 1.0;    // estimated probe frequency
  double omega_a = 2.0;  // ancilla frequency
  double g = 1.0;        // probe-ancilla coupling strength
  double lambda = 1.0;   // probe level-splitting scale
  BlochVector m{0.0, 0.0, 1.0};  // probe Hamiltonian axis, unit
  BlochVector n{1.0, 0.0, 0.0};  // interaction axis, unit
  double a1 = 1.0, a2 = -1.0;    // eigenvalues of ancilla observable A
  double h1 = 1.0, h2 = -1.0;    // eigenvalues of ancilla free Hamiltonian
  int n_probes = 3;

  double m_dot_n() const { return m.dot(n); }
};

struct AncillaStateSpec {
  double alpha = M_PI / 4;  // polar angle; pi/4 maximizes the protocol QFI
  double phi = 0.0;         // azimuthal angle
};

inline ProtocolSpec validate(ProtocolSpec spec) {
  auto renorm = [](BlochVector& v, const char* field) {
    const double norm = v.norm();
    if (std::abs(norm - 1.0) > 1e-6)
      throw InvalidSpec(field, "must be a unit vector (|v|-1| <= 1e-6)");
    v /= norm;
  };
  renorm(spec.m, "m");
  renorm(spec.n, "n");
  if (spec.a1 == spec.a2)
    throw InvalidSpec("a", "ancilla observable eigenvalues must differ");
  if (!(spec.lambda > 0.0))
    throw InvalidSpec("lambda", "must be positive");
  if (spec.n_probes < 1)
    throw InvalidSpec("n_probes", "must be at least 1");
  return spec;
}

// Branch frequency mu_k = sqrt(a_k^2 g^2 + 2 a_k g lambda w (m.n) + lambda^2 w^2).
inline double mu(const ProtocolSpec& s, int k) {
  const double ak = (k == 1) ? s.a1 : s.a2;
  const double lw = s.lambda * s.omega;
  const double arg = ak * ak * s.g * s.g + 2.0 * ak * s.g * lw * s.m_dot_n() +
                     lw * lw;
  const double val = std::sqrt(std::max(arg, 0.0));
  if (val < 1e-12)
    throw DegenerateFrequency("mu: branch frequency vanished (a_k g = -lambda w, m.n = 1)");
  return val;
}

// d mu_k / d omega, for the analytic chain rule.
inline double mu_domega(const ProtocolSpec& s, int k) {
  const double ak = (k == 1) ? s.a1 : s.a2;
  return (ak * s.g * s.lambda * s.m_dot_n() +
          s.lambda * s.lambda * s.omega) / mu(s, k);
}

// One-body branch generator acting on a single probe.
inline ComplexMatrix vartheta(const ProtocolSpec& s, int k) {
  const double ak = (k == 1) ? s.a1 : s.a2;
  const double hk = (k == 1) ? s.h1 : s.h2;
  return s.lambda * s.omega * bloch_operator(s.m) +
         (s.omega_a / s.n_probes) * hk * ComplexMatrix::Identity(2, 2) +
         s.g * ak * bloch_operator(s.n);
}

// Kronecker sum of N copies of vartheta: the branch generator on all probes.
inline ComplexMatrix theta_full(const ProtocolSpec& s, int k) {
  if (s.n_probes > kMaxProbesKronSum)
    throw SizeGuard("theta_full: n_probes exceeds dense-size guard");
  const ComplexMatrix one = vartheta(s, k);
  const long dim = 1L << s.n_probes;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < s.n_probes; ++i) {
    ComplexMatrix term = ComplexMatrix::Identity(1, 1);
    for (int j = 0; j < s.n_probes; ++j)
      term = numkit::kron(term, j == i ? one
                                       : ComplexMatrix::Identity(2, 2));
    out += term;
  }
  return out;
}

// Full joint Hamiltonian on probes (x) ancilla, dimension 2^(N+1).
inline ComplexMatrix total_hamiltonian(const ProtocolSpec& s) {
  if (s.n_probes > kMaxProbesJoint)
    throw SizeGuard("total_hamiltonian: n_probes exceeds dense-size guard");
  const long pdim = 1L << s.n_probes;
  const ComplexMatrix id_a = ComplexMatrix::Identity(2, 2);
  ComplexMatrix ha = ComplexMatrix::Zero(2, 2);
  ha(0, 0) = s.h1;
  ha(1, 1) = s.h2;
  ComplexMatrix a_obs = ComplexMatrix::Zero(2, 2);
  a_obs(0, 0) = s.a1;
  a_obs(1, 1) = s.a2;

  ComplexMatrix h = numkit::kron(ComplexMatrix::Identity(pdim, pdim),
                                 s.omega_a * ha);
  const ComplexMatrix hp1 = s.lambda * s.omega * bloch_operator(s.m);
  const ComplexMatrix b1 = bloch_operator(s.n);
  for (int i = 0; i < s.n_probes; ++i) {
    ComplexMatrix free_term = ComplexMatrix::Identity(1, 1);
    ComplexMatrix int_term = ComplexMatrix::Identity(1, 1);
    for (int j = 0; j < s.n_probes; ++j) {
      free_term = numkit::kron(free_term,
                               j == i ? hp1 : ComplexMatrix::Identity(2, 2));
      int_term = numkit::kron(int_term,
                              j == i ? b1 : ComplexMatrix::Identity(2, 2));
    }
    h += numkit::kron(free_term, id_a);
    h += s.g * numkit::kron(int_term, a_obs);
  }
  return h;
}

// Pure qubit state with Bloch vector v; amplitude on |0> real non-negative.
inline StateVector probe_state(const BlochVector& v) {
  if (std::abs(v.norm() - 1.0) > 1e-12)
    throw InvalidBloch("probe_state: Bloch vector must have unit norm");
  StateVector psi(2);
  if (v.z() > -1.0 + 1e-14) {
    const double c0 = std::sqrt((1.0 + v.z()) / 2.0);
    psi(0) = c0;
    psi(1) = cxd(v.x(), v.y()) / (2.0 * c0);
  } else {
    psi(0) = 0.0;
    psi(1) = 1.0;
  }
  return psi;
}

// cos(alpha)|a1> + e^{-i phi} sin(alpha)|a2>
inline StateVector ancilla_state(const AncillaStateSpec& a) {
  StateVector psi(2);
  psi(0) = std::cos(a.alpha);
  psi(1) = std::exp(cxd(0.0, -a.phi)) * std::sin(a.alpha);
  return psi;
}

}  // namespace qmetro::model

#endif  // QMETRO_MODEL_HPP_
