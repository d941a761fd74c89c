// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace spinclone {

using cplx = std::complex<double>;

// Basis convention used throughout the library:
//   bit i of a basis index encodes qubit i, qubit 0 is the central spin,
//   bit value 0 is |0> (sigma_z = +1), bit value 1 is |1> (sigma_z = -1).

/// Pure state on `n_qubits` qubits, 2^n_qubits complex amplitudes.
class StateVector {
public:
  StateVector(int n_qubits, Eigen::VectorXcd amplitudes);

  /// Computational basis state with the given index.
  static StateVector basis(int n_qubits, std::size_t index);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

  double norm() const { return amps_.norm(); }
  cplx inner(const StateVector& other) const; ///< <this|other>

private:
  int n_qubits_;
  Eigen::VectorXcd amps_;
};

/// Single-qubit density matrix. Hermiticity holds by construction: only the
/// two real populations and the upper coherence are stored.
class QubitDensityMatrix {
public:
  QubitDensityMatrix(double rho00, cplx rho01, double rho11)
      : p0_(rho00), c01_(rho01), p1_(rho11) {}

  /// Builds from a full 2x2 matrix, rejecting non-Hermitian input beyond `tol`.
  static QubitDensityMatrix from_matrix(const Eigen::Matrix2cd& m, double tol = 1e-12);

  double rho00() const { return p0_; }
  double rho11() const { return p1_; }
  cplx rho01() const { return c01_; }
  cplx rho10() const { return std::conj(c01_); }
  cplx operator()(int row, int col) const;

  double trace() const { return p0_ + p1_; }
  double min_eigenvalue() const;
  Eigen::Matrix2cd matrix() const;

  /// Unit trace and positive semidefinite, both to within `tol`.
  bool is_valid(double tol = 1e-12) const;
  /// Largest entrywise modulus of the difference.
  double max_abs_diff(const QubitDensityMatrix& other) const;

private:
  double p0_;
  cplx c01_;
  double p1_;
};

/// Bloch-sphere amplitudes alpha = cos(theta/2), beta = e^{i phi} sin(theta/2).
struct QubitAmplitudes {
  cplx alpha;
  cplx beta;

  static QubitAmplitudes bloch(double theta, double phi);
  static QubitAmplitudes equatorial(double phi);
};

/// Symmetric outer-register state with k qubits in |0>, dimension 2^M.
StateVector dicke_state(int M, int k);

/// (alpha|0> + beta|1>) on the central qubit times dicke_state(M, k) on qubits 1..M.
StateVector prepare_initial(cplx alpha, cplx beta, int M, int k);

/// Partial trace over every qubit except `qubit_index`.
QubitDensityMatrix reduce_qubit(const StateVector& psi, int qubit_index);

/// <psi|rho|psi> for psi = alpha|0> + beta|1>.
double fidelity_pure(const QubitDensityMatrix& rho, cplx alpha, cplx beta);

/// Binomial coefficient as a double; exact for the sizes used here.
double binomial(int n, int k);

} // namespace spinclone
