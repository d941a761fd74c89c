// SPDX-License-Identifier: Apache-2.0
#include "spinclone/dynamics.hpp"

#include "spinclone/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

namespace spinclone {

namespace {

constexpr double kLeakTol = 1e-10;
const cplx I{0.0, 1.0};

void check_k(const ModelParams& p, int k) {
  if (k < 0 || k > p.M)
    throw DomainError("k=" + std::to_string(k) + " outside [0, " + std::to_string(p.M) + "]");
}

void check_t(double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw DomainError("evolution time must be finite and >= 0");
}

// exp(-iHt) restricted to a 2x2 block, via its analytic eigensystem. Written as
// e^{-ict} (cos(wt) - i sin(wt) (P+ - P-)) so that t = 0 gives the identity exactly.
Eigen::Matrix2cd block_propagator(const ModelParams& p, HalfInteger m, double t) {
  const SectorBlock b = sector_block(p, m);
  const BlockEigensystem es = block_eigensystem(b, p.lambda, p.B);
  const double c = 0.5 * (es.e_plus + es.e_minus);
  const double w = 0.5 * (es.e_plus - es.e_minus);
  const Eigen::Matrix2d split =
      es.v_plus * es.v_plus.transpose() - es.v_minus * es.v_minus.transpose();
  const Eigen::Matrix2cd u = std::cos(w * t) * Eigen::Matrix2cd::Identity() -
                             I * std::sin(w * t) * split.cast<cplx>();
  return std::exp(-I * c * t) * u;
}

} // namespace

double BlockAmplitudes::unitarity_defect() const {
  return std::max(std::abs(std::norm(f1) + std::norm(f2) - 1.0),
                  std::abs(std::norm(g1) + std::norm(g2) - 1.0));
}

double BlockAmplitudes::max_abs_diff(const BlockAmplitudes& o) const {
  return std::max({std::abs(f1 - o.f1), std::abs(f2 - o.f2), std::abs(g1 - o.g1),
                   std::abs(g2 - o.g2)});
}

BlockAmplitudes evolve_analytic(const ModelParams& p, int k, double t) {
  p.validate();
  check_k(p, k);
  check_t(t);

  BlockAmplitudes a;
  a.t = t;
  a.params = p;
  a.k = k;

  // |0>|S(M,k)> is the first ket of block m = k + 1 - M/2.
  if (k == p.M) {
    a.f1 = std::exp(-I * edge_eigenstate(p, Edge::top).energy * t);
    a.f2 = 0.0;
  } else {
    const Eigen::Matrix2cd u = block_propagator(p, HalfInteger::from_twice(2 * k + 2 - p.M), t);
    a.f1 = u(0, 0);
    a.f2 = u(1, 0);
  }

  // |1>|S(M,k)> is the second ket of block m = k - M/2.
  if (k == 0) {
    a.g1 = 0.0;
    a.g2 = std::exp(-I * edge_eigenstate(p, Edge::bottom).energy * t);
  } else {
    const Eigen::Matrix2cd u = block_propagator(p, HalfInteger::from_twice(2 * k - p.M), t);
    a.g1 = u(0, 1);
    a.g2 = u(1, 1);
  }
  return a;
}

BrutePropagator::BrutePropagator(const ModelParams& p, int max_outer_spins) : params_(p) {
  const FullHamiltonian h = build_full_hamiltonian(p, max_outer_spins);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix);
  if (solver.info() != Eigen::Success)
    throw NumericalError("BrutePropagator: Hermitian eigensolver failed for M=" +
                         std::to_string(p.M));
  evals_ = solver.eigenvalues();
  evecs_ = solver.eigenvectors();
}

StateVector BrutePropagator::evolve(const StateVector& psi0, double t) const {
  if (psi0.n_qubits() != params_.M + 1)
    throw DomainError("BrutePropagator::evolve: state has wrong qubit count");
  Eigen::VectorXcd coeff = evecs_.adjoint() * psi0.amplitudes();
  for (Eigen::Index i = 0; i < coeff.size(); ++i)
    coeff[i] *= std::exp(-I * evals_[i] * t);
  return {psi0.n_qubits(), evecs_ * coeff};
}

double BrutePropagator::energy(const StateVector& psi) const {
  const Eigen::VectorXcd coeff = evecs_.adjoint() * psi.amplitudes();
  return coeff.cwiseAbs2().dot(evals_);
}

std::shared_ptr<const BrutePropagator> PropagatorCache::get(const ModelParams& p) {
  const Key key{p.M, p.lambda, p.B};
  {
    std::shared_lock lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  // Built outside the lock; a racing builder of the same key is harmless.
  auto built = std::make_shared<const BrutePropagator>(p, max_outer_spins_);
  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.emplace(key, std::move(built));
  return it->second;
}

std::size_t PropagatorCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

StateVector evolve_brute_force(const ModelParams& p, const StateVector& psi0, double t,
                               int max_outer_spins) {
  return BrutePropagator(p, max_outer_spins).evolve(psi0, t);
}

namespace {

struct Projection {
  cplx first = 0.0;
  cplx second = 0.0;
};

// Components of psi along up to two orthonormal kets, plus the leaked weight.
Projection project(const StateVector& psi, const StateVector* a, const StateVector* b,
                   const char* what) {
  Projection out;
  Eigen::VectorXcd rest = psi.amplitudes();
  if (a) {
    out.first = a->inner(psi);
    rest -= out.first * a->amplitudes();
  }
  if (b) {
    out.second = b->inner(psi);
    rest -= out.second * b->amplitudes();
  }
  const double leak = rest.squaredNorm();
  if (leak > kLeakTol)
    throw OracleInconsistencyError(std::string("amplitudes_from_brute_force: ") + what +
                                   " branch leaks weight " + std::to_string(leak) +
                                   " outside its symmetric block");
  return out;
}

} // namespace

BlockAmplitudes amplitudes_from_brute_force(const BrutePropagator& prop, int k, double t) {
  const ModelParams& p = prop.params();
  check_k(p, k);
  check_t(t);

  BlockAmplitudes a;
  a.t = t;
  a.params = p;
  a.k = k;

  const StateVector up_k = prepare_initial(1.0, 0.0, p.M, k);
  const StateVector down_k = prepare_initial(0.0, 1.0, p.M, k);

  {
    const StateVector psi = prop.evolve(up_k, t);
    if (k < p.M) {
      const StateVector down_k1 = prepare_initial(0.0, 1.0, p.M, k + 1);
      const Projection pr = project(psi, &up_k, &down_k1, "|0>");
      a.f1 = pr.first;
      a.f2 = pr.second;
    } else {
      a.f1 = project(psi, &up_k, nullptr, "|0>").first;
      a.f2 = 0.0;
    }
  }
  {
    const StateVector psi = prop.evolve(down_k, t);
    if (k > 0) {
      const StateVector up_km1 = prepare_initial(1.0, 0.0, p.M, k - 1);
      const Projection pr = project(psi, &up_km1, &down_k, "|1>");
      a.g1 = pr.first;
      a.g2 = pr.second;
    } else {
      a.g1 = 0.0;
      a.g2 = project(psi, nullptr, &down_k, "|1>").second;
    }
  }
  return a;
}

BlockAmplitudes amplitudes_from_brute_force(const ModelParams& p, int k, double t) {
  return amplitudes_from_brute_force(BrutePropagator(p), k, t);
}

} // namespace spinclone
