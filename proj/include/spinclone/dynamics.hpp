// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spinclone/hilbert.hpp"
#include "spinclone/star_model.hpp"

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <shared_mutex>
#include <tuple>

namespace spinclone {

/// Evolution amplitudes of the two symmetric input branches:
///
///   e^{-iHt} |0>|S(M,k)> = f1 |0>|S(M,k)>   + f2 |1>|S(M,k+1)>
///   e^{-iHt} |1>|S(M,k)> = g1 |0>|S(M,k-1)> + g2 |1>|S(M,k)>
///
/// Both branches share the e^{-iHt} phase convention, so the relative phase
/// between the f and g pairs is physical.
struct BlockAmplitudes {
  cplx f1{1.0, 0.0};
  cplx f2{0.0, 0.0};
  cplx g1{0.0, 0.0};
  cplx g2{1.0, 0.0};
  double t = 0.0;
  ModelParams params;
  int k = 0;

  /// max(| |f1|^2+|f2|^2 - 1 |, | |g1|^2+|g2|^2 - 1 |)
  double unitarity_defect() const;
  /// Largest modulus difference over the four amplitudes.
  double max_abs_diff(const BlockAmplitudes& other) const;
};

/// Propagates the two symmetric branches inside their 2x2 blocks (or edge
/// states for k = M and k = 0).
BlockAmplitudes evolve_analytic(const ModelParams& p, int k, double t);

/// exp(-iHt) from one full Hermitian eigendecomposition, reusable across times.
/// Immutable after construction, so concurrent evolve() calls are safe.
class BrutePropagator {
public:
  explicit BrutePropagator(const ModelParams& p,
                           int max_outer_spins = kDefaultMaxOuterSpins);

  const ModelParams& params() const { return params_; }
  const Eigen::VectorXd& eigenvalues() const { return evals_; }
  const Eigen::MatrixXcd& eigenvectors() const { return evecs_; }

  StateVector evolve(const StateVector& psi0, double t) const;
  /// <psi|H|psi>
  double energy(const StateVector& psi) const;

private:
  ModelParams params_;
  Eigen::VectorXd evals_;
  Eigen::MatrixXcd evecs_;
};

/// Keeps one BrutePropagator per distinct ModelParams.
class PropagatorCache {
public:
  explicit PropagatorCache(int max_outer_spins = kDefaultMaxOuterSpins)
      : max_outer_spins_(max_outer_spins) {}

  std::shared_ptr<const BrutePropagator> get(const ModelParams& p);
  std::size_t size() const;

private:
  using Key = std::tuple<int, double, double>;
  int max_outer_spins_;
  mutable std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const BrutePropagator>> entries_;
};

StateVector evolve_brute_force(const ModelParams& p, const StateVector& psi0, double t,
                               int max_outer_spins = kDefaultMaxOuterSpins);

/// Projects brute-force trajectories of |0>|S(M,k)> and |1>|S(M,k)> onto the
/// four symmetric kets above. Throws OracleInconsistencyError if more than
/// 1e-10 of the weight leaks outside them.
BlockAmplitudes amplitudes_from_brute_force(const BrutePropagator& prop, int k, double t);
BlockAmplitudes amplitudes_from_brute_force(const ModelParams& p, int k, double t);

} // namespace spinclone
