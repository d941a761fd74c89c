// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spinclone/hilbert.hpp"

#include <Eigen/Dense>

#include <string>

namespace spinclone {

/// Largest outer-spin count accepted by the dense full-space path.
inline constexpr int kDefaultMaxOuterSpins = 14;

/// XXZ star network: central spin 0 coupled to M outer spins with unit exchange,
/// z anisotropy `lambda` and uniform field `B`. Energies and times are in units
/// of the exchange coupling.
struct ModelParams {
  int M = 1;
  double lambda = 0.0;
  double B = 0.0;

  /// Throws DomainError unless M >= 1 and lambda, B are finite.
  void validate() const;
  bool operator==(const ModelParams&) const = default;
};

/// Half-integer quantum number stored as twice its value.
struct HalfInteger {
  int twice = 0;

  static constexpr HalfInteger from_twice(int t) { return HalfInteger{t}; }
  constexpr double value() const { return 0.5 * twice; }
  bool operator==(const HalfInteger&) const = default;
};

/// Dense H over all 2^(M+1) basis states.
struct FullHamiltonian {
  ModelParams params;
  Eigen::MatrixXcd matrix;

  int n_qubits() const { return params.M + 1; }
  Eigen::Index dim() const { return matrix.rows(); }
};

/// 2x2 invariant block of the j = M/2 sector over
/// { |0>|j, m-1>, |1>|j, m> }.
struct SectorBlock {
  HalfInteger j;
  HalfInteger m;
  double h00 = 0.0;
  double h01 = 0.0;
  double h11 = 0.0;

  /// Outer-register Dicke label k of the first basis ket |0>|S(M, k)>.
  int k_upper() const { return (m.twice - 2 + j.twice) / 2; }
};

struct BlockEigensystem {
  double e_plus = 0.0;
  double e_minus = 0.0;
  double a_plus = 0.0;          ///< unnormalized eigenvector (1, a_plus)
  double a_minus = 0.0;
  Eigen::Vector2d v_plus;       ///< normalized, first component > 0
  Eigen::Vector2d v_minus;
};

enum class Edge { top, bottom };

/// Stationary states outside every 2x2 block: |0>|j, j> (top) and |1>|j, -j> (bottom).
struct EdgeEigenstate {
  Edge which = Edge::top;
  int central_bit = 0;   ///< 0 for top, 1 for bottom
  int dicke_k = 0;       ///< outer register is dicke_state(M, dicke_k)
  double energy = 0.0;

  StateVector expand(int M) const;
  std::string describe() const;
};

/// Throws CapacityError when M exceeds `max_outer_spins`.
void check_dense_capacity(int M, int max_outer_spins = kDefaultMaxOuterSpins);

FullHamiltonian build_full_hamiltonian(const ModelParams& p,
                                       int max_outer_spins = kDefaultMaxOuterSpins);

/// Requires -j + 1 <= m <= j with j = M/2; edge values go through edge_eigenstate.
SectorBlock sector_block(const ModelParams& p, HalfInteger m);

BlockEigensystem block_eigensystem(const SectorBlock& b, double lambda, double B);

EdgeEigenstate edge_eigenstate(const ModelParams& p, Edge which);

} // namespace spinclone
