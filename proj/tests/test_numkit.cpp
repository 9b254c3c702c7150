// Copyright 2026 the qmetro authors
//
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "qmetro/numkit.hpp"
#include "test_support.hpp"

using namespace qmetro;
using numkit::ComplexMatrix;
using numkit::StateVector;
using numkit::cxd;

namespace {
const ComplexMatrix kI2 = ComplexMatrix::Identity(2, 2);
}

TEST_CASE("kron identity cases") {
  REQUIRE((numkit::kron(kI2, kI2) - ComplexMatrix::Identity(4, 4))
              .cwiseAbs()
              .maxCoeff() < 1e-15);

  ComplexMatrix sz(2, 2);
  sz << 1, 0, 0, -1;
  const ComplexMatrix k = numkit::kron(sz, kI2);
  REQUIRE(k(0, 0) == cxd(1.0));
  REQUIRE(k(1, 1) == cxd(1.0));
  REQUIRE(k(2, 2) == cxd(-1.0));
  REQUIRE(k(3, 3) == cxd(-1.0));
  REQUIRE(k.cwiseAbs().sum() == Catch::Approx(4.0));
}

TEST_CASE("kron flips both qubits") {
  ComplexMatrix sx(2, 2);
  sx << 0, 1, 1, 0;
  StateVector zz = StateVector::Zero(4);
  zz(0) = 1.0;  // |00>
  const StateVector out = numkit::kron(sx, sx) * zz;
  REQUIRE(std::abs(out(3) - cxd(1.0)) < 1e-15);
  REQUIRE(out.head(3).norm() < 1e-15);
}

TEST_CASE("kron mixed-product identity on random draws") {
  auto rng = testing::make_rng(11);
  for (int i = 0; i < 20; ++i) {
    const ComplexMatrix a = testing::random_hermitian(rng, 2);
    const ComplexMatrix b = testing::random_hermitian(rng, 2);
    const ComplexMatrix c = testing::random_hermitian(rng, 2);
    const ComplexMatrix d = testing::random_hermitian(rng, 2);
    const ComplexMatrix lhs = numkit::kron(a, b) * numkit::kron(c, d);
    const ComplexMatrix rhs = numkit::kron(a * c, b * d);
    REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("hermitian_eig on Pauli matrices") {
  ComplexMatrix sz(2, 2), sx(2, 2);
  sz << 1, 0, 0, -1;
  sx << 0, 1, 1, 0;

  const auto ez = numkit::hermitian_eig(sz);
  REQUIRE(ez.eigenvalues(0) == Catch::Approx(-1.0));
  REQUIRE(ez.eigenvalues(1) == Catch::Approx(1.0));

  const auto ex = numkit::hermitian_eig(sx);
  REQUIRE(ex.eigenvalues(0) == Catch::Approx(-1.0));
  REQUIRE(ex.eigenvalues(1) == Catch::Approx(1.0));
  // Eigenvectors are (|0> -+ |1>)/sqrt(2) up to phase.
  for (int c = 0; c < 2; ++c)
    REQUIRE(std::abs(std::abs(ex.eigenvectors(0, c)) - 1.0 / std::sqrt(2.0)) <
            1e-12);
}

TEST_CASE("hermitian_eig reconstruction and orthonormality") {
  auto rng = testing::make_rng(12);
  for (int i = 0; i < 10; ++i) {
    const ComplexMatrix m = testing::random_hermitian(rng, 8);
    const auto eig = numkit::hermitian_eig(m);
    const ComplexMatrix recon =
        eig.eigenvectors *
        eig.eigenvalues.cast<cxd>().asDiagonal() *
        eig.eigenvectors.adjoint();
    REQUIRE((recon - m).cwiseAbs().maxCoeff() < 1e-10);
    REQUIRE((eig.eigenvectors.adjoint() * eig.eigenvectors -
             ComplexMatrix::Identity(8, 8))
                .cwiseAbs()
                .maxCoeff() < 1e-12);
    for (int j = 1; j < 8; ++j)
      REQUIRE(eig.eigenvalues(j) >= eig.eigenvalues(j - 1));
  }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  ComplexMatrix m(2, 2);
  m << 0, 1, 0, 0;
  REQUIRE_THROWS_AS(numkit::hermitian_eig(m), NonHermitianInput);
}

TEST_CASE("evolve_hermitian basic phases") {
  ComplexMatrix sz(2, 2);
  sz << 1, 0, 0, -1;
  StateVector zero(2);
  zero << 1, 0;

  const StateVector out = numkit::evolve_hermitian(sz, M_PI, zero);
  REQUIRE(std::abs(out(0) - cxd(-1.0)) < 1e-12);  // e^{-i pi} |0>

  auto rng = testing::make_rng(13);
  const ComplexMatrix h = testing::random_hermitian(rng, 4);
  const StateVector psi = testing::random_state(rng, 4);
  REQUIRE((numkit::evolve_hermitian(h, 0.0, psi) - psi).norm() < 1e-13);
}

TEST_CASE("evolution composes and stays unitary") {
  auto rng = testing::make_rng(14);
  for (int i = 0; i < 10; ++i) {
    const ComplexMatrix h = testing::random_hermitian(rng, 8);
    const StateVector psi = testing::random_state(rng, 8);
    const double t1 = 0.3 + i * 0.1, t2 = 0.7;

    const StateVector whole = numkit::evolve_hermitian(h, t1 + t2, psi);
    const StateVector stepped =
        numkit::evolve_hermitian(h, t2, numkit::evolve_hermitian(h, t1, psi));
    REQUIRE((whole - stepped).norm() < 1e-11);
    REQUIRE(std::abs(whole.norm() - 1.0) < 1e-10);

    const auto eig = numkit::hermitian_eig(h);
    const ComplexMatrix u = numkit::propagator(eig, t1);
    REQUIRE((u.adjoint() * u - ComplexMatrix::Identity(8, 8))
                .cwiseAbs()
                .maxCoeff() < 1e-11);
  }
}

TEST_CASE("partial_trace of a product state") {
  auto rng = testing::make_rng(15);
  const StateVector a = testing::random_state(rng, 4);  // two probes
  const StateVector b = testing::random_state(rng, 2);  // ancilla
  StateVector joint(8);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j) joint(2 * i + j) = a(i) * b(j);
  const ComplexMatrix rho = joint * joint.adjoint();
  const ComplexMatrix anc = numkit::partial_trace(rho, {2, 2, 2}, {2});
  REQUIRE((anc - b * b.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  const ComplexMatrix probes = numkit::partial_trace(rho, {2, 2, 2}, {0, 1});
  REQUIRE((probes - a * a.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial_trace of a maximally entangled pair") {
  StateVector bell(4);
  bell << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
  const ComplexMatrix rho = bell * bell.adjoint();
  for (int keep = 0; keep < 2; ++keep) {
    const ComplexMatrix red = numkit::partial_trace(rho, {2, 2}, {keep});
    REQUIRE((red - 0.5 * kI2).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("partial_trace preserves trace and rejects bad dims") {
  auto rng = testing::make_rng(16);
  const ComplexMatrix rho = testing::random_density(rng, 8);
  const ComplexMatrix red = numkit::partial_trace(rho, {2, 2, 2}, {1});
  REQUIRE(std::abs(red.trace().real() - rho.trace().real()) < 1e-12);
  REQUIRE(numkit::hermiticity_defect(red) < 1e-12);
  REQUIRE_THROWS_AS(numkit::partial_trace(rho, {2, 2}, {0}),
                    DimensionMismatch);
  REQUIRE_THROWS_AS(numkit::partial_trace(rho, {2, 2, 2}, {3}),
                    DimensionMismatch);
}
