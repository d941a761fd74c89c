// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace spinclone {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Requested Hilbert space exceeds the configured dense-matrix cap.
class CapacityError : public std::length_error {
public:
  using std::length_error::length_error;
};

/// Failure inside a numerical kernel (e.g. eigensolver did not converge).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Two routes that must agree did not; almost always a convention bug.
class OracleInconsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A formula produced a state that is not a density matrix.
class FormulaInconsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace spinclone
