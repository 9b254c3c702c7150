// Copyright 2026 the qmetro authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef QMETRO_ERRORS_HPP_
#define QMETRO_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qmetro {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Caller handed a non-Hermitian matrix to a Hermitian-only routine.
struct NonHermitianInput : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// Protocol parameter set violates an invariant; carries the offending field.
struct InvalidSpec : Error {
  std::string field;
  InvalidSpec(std::string f, const std::string& reason)
      : Error(f + ": " + reason), field(std::move(f)) {}
};

struct InvalidBloch : Error {
  using Error::Error;
};

// A branch frequency vanished; the closed forms divide by it.
struct DegenerateFrequency : Error {
  using Error::Error;
};

struct SizeGuard : Error {
  using Error::Error;
};

// |k'(t_p)| = 0: the evolved state carries no information about omega.
struct ZeroSensitivity : Error {
  using Error::Error;
};

// Bloch family reaches |r| = 1 with nonzero radial velocity.
struct SingularFamily : Error {
  using Error::Error;
};

struct RangeGuard : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct IntegratorFailure : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace qmetro

#endif  // QMETRO_ERRORS_HPP_
