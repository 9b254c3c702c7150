// Copyright 2026 the qmetro authors
//
// SPDX-License-Identifier: Apache-2.0
//
// Minimal dense complex linear algebra shared by every other module:
// Kronecker products, Hermitian eigendecomposition, exact unitary evolution
// through the spectral form, and partial traces.
//
// Conventions (asserted throughout the test suite):
//   - subsystem 0 is the leftmost Kronecker factor (most significant index),
//   - all generators are Hermitian; exp(-iHt) is computed from the
//     eigendecomposition, never by series or scaling-and-squaring.

#ifndef QMETRO_NUMKIT_HPP_
#define QMETRO_NUMKIT_HPP_

#include <algorithm>
#include <complex>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "qmetro/errors.hpp"

namespace qmetro::numkit {

using cxd = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-10;

struct EigDecomposition {
  Eigen::VectorXd eigenvalues;   // ascending
  ComplexMatrix eigenvectors;    // columns, orthonormal
};

inline double hermiticity_defect(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline EigDecomposition hermitian_eig(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("hermitian_eig: matrix is not square");
  if (hermiticity_defect(m) > kHermitianTol)
    throw NonHermitianInput("hermitian_eig: input is not Hermitian within 1e-10");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw Error("hermitian_eig: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// exp(-i h t) |psi> through the spectral form of h.
inline StateVector evolve_hermitian(const EigDecomposition& eig, double t,
                                    const StateVector& psi) {
  StateVector coeffs = eig.eigenvectors.adjoint() * psi;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i)
    coeffs(i) *= std::exp(cxd(0.0, -eig.eigenvalues(i) * t));
  return eig.eigenvectors * coeffs;
}

inline StateVector evolve_hermitian(const ComplexMatrix& h, double t,
                                    const StateVector& psi) {
  return evolve_hermitian(hermitian_eig(h), t, psi);
}

// Dense exp(-i h t) as a matrix, for callers that reuse the propagator.
inline ComplexMatrix propagator(const EigDecomposition& eig, double t) {
  StateVector phases(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::exp(cxd(0.0, -eig.eigenvalues(i) * t));
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

// Trace out every subsystem not listed in `keep`. `dims` are the per-factor
// dimensions in Kronecker order; `keep` is an ascending list of indices.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho,
                                   const std::vector<int>& dims,
                                   const std::vector<int>& keep) {
  const long total = std::accumulate(dims.begin(), dims.end(), 1L,
                                     [](long a, int b) { return a * b; });
  if (rho.rows() != total || rho.cols() != total)
    throw DimensionMismatch("partial_trace: subsystem dims do not match rho");
  for (int k : keep)
    if (k < 0 || k >= static_cast<int>(dims.size()))
      throw DimensionMismatch("partial_trace: keep index out of range");

  std::vector<int> traced;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i)
    if (std::find(keep.begin(), keep.end(), i) == keep.end())
      traced.push_back(i);

  // Strides for the row-major-style multi-index (factor 0 most significant).
  std::vector<long> stride(dims.size());
  long acc = 1;
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
    stride[i] = acc;
    acc *= dims[i];
  }

  long keep_dim = 1, traced_dim = 1;
  for (int k : keep) keep_dim *= dims[k];
  for (int k : traced) traced_dim *= dims[k];

  // Enumerate offsets contributed by the kept and traced factors separately.
  auto offsets = [&](const std::vector<int>& subsys) {
    std::vector<long> out(1, 0);
    for (int s : subsys) {
      std::vector<long> next;
      next.reserve(out.size() * dims[s]);
      for (long base : out)
        for (int v = 0; v < dims[s]; ++v) next.push_back(base + v * stride[s]);
      out = std::move(next);
    }
    return out;
  };
  const std::vector<long> keep_off = offsets(keep);
  const std::vector<long> trace_off = offsets(traced);

  ComplexMatrix out = ComplexMatrix::Zero(keep_dim, keep_dim);
  for (long i = 0; i < keep_dim; ++i)
    for (long j = 0; j < keep_dim; ++j) {
      cxd sum = 0.0;
      for (long e = 0; e < traced_dim; ++e)
        sum += rho(keep_off[i] + trace_off[e], keep_off[j] + trace_off[e]);
      out(i, j) = sum;
    }
  return out;
}

}  // namespace qmetro::numkit

#endif  // QMETRO_NUMKIT_HPP_
