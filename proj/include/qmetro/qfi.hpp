// Copyright 2026 the qmetro authors
//
// SPDX-License-Identifier: Apache-2.0
//
// Classical and quantum Fisher-information estimators, independent of the
// probe-ancilla protocol. Mixed-state QFI goes through the spectral sum
//
//   F_Q = sum_{p_i + p_j > floor} 2 |<i| drho |j>|^2 / (p_i + p_j),
//
// the pure-state form is 4[<dpsi|dpsi> - |<psi|dpsi>|^2], and qubit families
// may use the Bloch form |dr|^2 + (r.dr)^2 / (1 - |r|^2).

#ifndef QMETRO_QFI_HPP_
#define QMETRO_QFI_HPP_

#include <cmath>
#include <functional>
#include <utility>

#include <Eigen/Dense>

#include "qmetro/errors.hpp"
#include "qmetro/model.hpp"
#include "qmetro/numkit.hpp"

namespace qmetro::qfi {

using model::BlochVector;
using numkit::ComplexMatrix;
using numkit::StateVector;
using numkit::cxd;

inline constexpr double kEigFloor = 1e-10;   // relative to trace scale
inline constexpr double kBlochFloor = 1e-9;  // 1-|r|^2 pure-state boundary
inline constexpr double kProbFloor = 1e-12;  // CFI outcome floor

inline double default_fd_step(double theta) {
  return 1e-6 * std::max(1.0, std::abs(theta));
}

// Parametric density-matrix family. If `drho` is unset, derivatives fall
// back to central differences with `fd_step` (0 = default step).
struct StateFamily {
  std::function<ComplexMatrix(double)> rho;
  std::function<ComplexMatrix(double)> drho;  // optional analytic derivative
  double fd_step = 0.0;

  std::pair<ComplexMatrix, ComplexMatrix> at(double theta) const {
    ComplexMatrix r = rho(theta);
    if (drho) return {std::move(r), drho(theta)};
    const double h = fd_step > 0.0 ? fd_step : default_fd_step(theta);
    ComplexMatrix d = (rho(theta + h) - rho(theta - h)) / (2.0 * h);
    return {std::move(r), std::move(d)};
  }
};

// Finite-outcome measurement family: theta -> probability vector.
struct ProbabilityFamily {
  std::function<Eigen::VectorXd(double)> probs;
};

struct CfiResult {
  double value = 0.0;
  int skipped_outcomes = 0;  // outcomes below the probability floor
};

inline CfiResult cfi(const ProbabilityFamily& family, double theta, double h) {
  const Eigen::VectorXd p = family.probs(theta);
  const Eigen::VectorXd dp =
      (family.probs(theta + h) - family.probs(theta - h)) / (2.0 * h);
  CfiResult out;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) <= kProbFloor) {
      ++out.skipped_outcomes;
      continue;
    }
    out.value += dp(i) * dp(i) / p(i);
  }
  return out;
}

// Symmetric logarithmic derivative L with (rho L + L rho)/2 = drho on the
// support of rho; zero on eigenvalue pairs below the floor.
inline ComplexMatrix sld(const ComplexMatrix& rho, const ComplexMatrix& drho) {
  const auto eig = numkit::hermitian_eig(rho);
  const double floor = kEigFloor * std::max(1.0, std::abs(rho.trace().real()));
  const ComplexMatrix d_eig =
      eig.eigenvectors.adjoint() * drho * eig.eigenvectors;
  ComplexMatrix l_eig = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (Eigen::Index i = 0; i < rho.rows(); ++i)
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      const double denom = eig.eigenvalues(i) + eig.eigenvalues(j);
      if (denom > floor) l_eig(i, j) = 2.0 * d_eig(i, j) / denom;
    }
  return eig.eigenvectors * l_eig * eig.eigenvectors.adjoint();
}

inline double qfi_mixed(const ComplexMatrix& rho, const ComplexMatrix& drho) {
  const auto eig = numkit::hermitian_eig(rho);
  const double floor = kEigFloor * std::max(1.0, std::abs(rho.trace().real()));
  const ComplexMatrix d_eig =
      eig.eigenvectors.adjoint() * drho * eig.eigenvectors;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < rho.rows(); ++i)
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      const double denom = eig.eigenvalues(i) + eig.eigenvalues(j);
      if (denom > floor) sum += 2.0 * std::norm(d_eig(i, j)) / denom;
    }
  return sum;
}

inline double qfi_pure(const StateVector& psi, const StateVector& dpsi) {
  const cxd overlap = psi.dot(dpsi);  // <psi|dpsi>
  return 4.0 * (dpsi.squaredNorm() - std::norm(overlap));
}

// Unitary family psi(theta) = exp(-i H_theta t) psi0. `generator` is the
// parameter-derivative of the Hamiltonian, dH/dtheta.
inline double qfi_unitary(const StateVector& psi0,
                          const ComplexMatrix& generator, double t) {
  if (numkit::hermiticity_defect(generator) > numkit::kHermitianTol)
    throw NonHermitianInput("qfi_unitary: generator is not Hermitian");
  const StateVector g_psi = generator * psi0;
  const double mean = psi0.dot(g_psi).real();
  const double second = g_psi.squaredNorm();
  return 4.0 * t * t * (second - mean * mean);
}

inline double qfi_bloch(const BlochVector& r, const BlochVector& dr) {
  const double r2 = r.squaredNorm();
  if (r2 > 1.0 + 1e-12)
    throw InvalidBloch("qfi_bloch: Bloch vector outside the unit ball");
  const double radial = r.dot(dr);
  if (1.0 - r2 < kBlochFloor) {
    if (std::abs(radial) < 1e-9) return dr.squaredNorm();  // pure-state limit
    throw SingularFamily(
        "qfi_bloch: |r| = 1 with nonzero radial velocity; family leaves the Bloch ball");
  }
  return dr.squaredNorm() + radial * radial / (1.0 - r2);
}

// Best product-state QFI: N t^2 (lambda_max - lambda_min)^2.
inline double max_qfi_product(double gap, int n, double t) {
  return n * t * t * gap * gap;
}

// Best entangled (GHZ-input) QFI: N^2 t^2 (lambda_max - lambda_min)^2.
inline double max_qfi_entangled(double gap, int n, double t) {
  return static_cast<double>(n) * n * t * t * gap * gap;
}

}  // namespace qmetro::qfi

#endif  // QMETRO_QFI_HPP_
