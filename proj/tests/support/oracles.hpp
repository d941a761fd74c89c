// SPDX-License-Identifier: Apache-2.0
//
// Reference implementations used only by the tests. None of these share code
// with the library paths they check: the Hamiltonian is assembled from Pauli
// Kronecker products, time evolution uses a Pade matrix exponential and the
// partial trace goes through the full density matrix.
#pragma once

#include "spinclone/hilbert.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace spinclone::oracle {

using Mat = Eigen::MatrixXcd;

inline Mat pauli(char which) {
  Mat m(2, 2);
  const std::complex<double> i{0.0, 1.0};
  switch (which) {
  case 'x': m << 0, 1, 1, 0; break;
  case 'y': m << 0, -i, i, 0; break;
  case 'z': m << 1, 0, 0, -1; break;
  default: m = Mat::Identity(2, 2);
  }
  return m;
}

/// Operator acting as `op` on qubit `q` of an n-qubit register (qubit 0 = least significant).
inline Mat embed(const Mat& op, int q, int n) {
  Mat out = Mat::Identity(1, 1);
  for (int site = n - 1; site >= 0; --site) {
    const Mat factor = site == q ? op : Mat::Identity(2, 2);
    Mat next = Eigen::kroneckerProduct(out, factor).eval();
    out = next;
  }
  return out;
}

/// Star Hamiltonian assembled term by term from Pauli strings.
inline Mat pauli_hamiltonian(int M, double lambda, double B) {
  const int n = M + 1;
  const Eigen::Index dim = Eigen::Index{1} << n;
  Mat h = Mat::Zero(dim, dim);
  const Mat x0 = embed(pauli('x'), 0, n), y0 = embed(pauli('y'), 0, n), z0 = embed(pauli('z'), 0, n);
  for (int q = 1; q <= M; ++q) {
    h += 0.5 * (x0 * embed(pauli('x'), q, n) + y0 * embed(pauli('y'), q, n) +
                lambda * z0 * embed(pauli('z'), q, n));
  }
  for (int q = 0; q <= M; ++q) h += 0.5 * B * embed(pauli('z'), q, n);
  return h;
}

/// Total sigma_z summed over all qubits.
inline Mat total_sz(int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Mat s = Mat::Zero(dim, dim);
  for (int q = 0; q < n; ++q) s += embed(pauli('z'), q, n);
  return s;
}

/// exp(-iHt) psi by scaling-and-squaring Pade.
inline Eigen::VectorXcd pade_evolve(const Mat& h, const Eigen::VectorXcd& psi, double t) {
  const std::complex<double> i{0.0, 1.0};
  const Mat u = (-i * t * h).exp();
  return u * psi;
}

/// Single-qubit reduced matrix via the full density matrix.
inline Eigen::Matrix2cd partial_trace_full(const Eigen::VectorXcd& psi, int q) {
  const Mat rho = psi * psi.adjoint();
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  const Eigen::Index dim = psi.size();
  const Eigen::Index mask = Eigen::Index{1} << q;
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      if ((r & ~mask) == (c & ~mask)) out((r & mask) ? 1 : 0, (c & mask) ? 1 : 0) += rho(r, c);
  return out;
}

/// Symmetric state with k zeros over M qubits, built by enumerating
/// permutations of a sorted bit pattern.
inline Eigen::VectorXcd dicke_by_permutation(int M, int k) {
  std::vector<int> bits(M);
  for (int i = 0; i < M; ++i) bits[i] = i < k ? 0 : 1;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << M);
  do {
    Eigen::Index idx = 0;
    for (int i = 0; i < M; ++i) idx |= Eigen::Index(bits[i]) << i;
    v[idx] = 1.0;
  } while (std::next_permutation(bits.begin(), bits.end()));
  return v / v.norm();
}

} // namespace spinclone::oracle
