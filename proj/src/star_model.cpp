// SPDX-License-Identifier: Apache-2.0
#include "spinclone/star_model.hpp"

#include "spinclone/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinclone {

void ModelParams::validate() const {
  if (M < 1) throw DomainError("ModelParams: M must be >= 1, got " + std::to_string(M));
  if (!std::isfinite(lambda) || !std::isfinite(B))
    throw DomainError("ModelParams: lambda and B must be finite");
}

void check_dense_capacity(int M, int max_outer_spins) {
  if (M > max_outer_spins)
    throw CapacityError("dense Hamiltonian for M=" + std::to_string(M) +
                        " exceeds the cap of M<=" + std::to_string(max_outer_spins));
}

FullHamiltonian build_full_hamiltonian(const ModelParams& p, int max_outer_spins) {
  p.validate();
  check_dense_capacity(p.M, max_outer_spins);

  const int n = p.M + 1;
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);

  for (Eigen::Index s = 0; s < dim; ++s) {
    const auto bit = [s](int q) { return static_cast<int>((s >> q) & 1); };
    const double z0 = bit(0) ? -1.0 : 1.0;
    double diag = 0.5 * p.B * z0;
    for (int q = 1; q < n; ++q) {
      const double zq = bit(q) ? -1.0 : 1.0;
      diag += 0.5 * p.lambda * z0 * zq + 0.5 * p.B * zq;
      // (sx sx + sy sy)/2 swaps antiparallel central/outer pairs with unit amplitude.
      if (bit(q) != bit(0)) h(s ^ 1 ^ (Eigen::Index{1} << q), s) += 1.0;
    }
    h(s, s) = diag;
  }
  return {p, std::move(h)};
}

SectorBlock sector_block(const ModelParams& p, HalfInteger m) {
  p.validate();
  const HalfInteger j = HalfInteger::from_twice(p.M);
  // m and j must share parity, and both block kets must exist.
  if ((m.twice - j.twice) % 2 != 0 || m.twice < -j.twice + 2 || m.twice > j.twice)
    throw DomainError("sector_block: m=" + std::to_string(m.value()) +
                      " outside [-j+1, j] for j=" + std::to_string(j.value()));
  const double jv = j.value();
  const double mv = m.value();
  SectorBlock b;
  b.j = j;
  b.m = m;
  b.h00 = p.lambda * (mv - 1.0) + p.B * (mv - 0.5);
  b.h11 = -p.lambda * mv + p.B * (mv - 0.5);
  b.h01 = std::sqrt((jv + mv) * (jv - mv + 1.0));
  return b;
}

BlockEigensystem block_eigensystem(const SectorBlock& b, double lambda, double B) {
  const double eps = b.h01;
  if (!(eps > 0.0))
    throw std::logic_error("block_eigensystem: vanishing coupling in block m=" +
                           std::to_string(b.m.value()));
  const double two_m_minus_1 = 2.0 * b.m.value() - 1.0;
  const double skew = lambda * two_m_minus_1;
  const double root = std::sqrt(skew * skew + 4.0 * eps * eps);

  BlockEigensystem es;
  es.e_plus = (-lambda + two_m_minus_1 * B + root) / 2.0;
  es.e_minus = (-lambda + two_m_minus_1 * B - root) / 2.0;

  // a_plus * a_minus = -1; evaluate the cancellation-free root directly.
  const double x = -skew;
  if (x >= 0.0) {
    es.a_plus = (x + root) / (2.0 * eps);
    es.a_minus = -1.0 / es.a_plus;
  } else {
    es.a_minus = (x - root) / (2.0 * eps);
    es.a_plus = -1.0 / es.a_minus;
  }
  es.v_plus = Eigen::Vector2d(1.0, es.a_plus) / std::sqrt(1.0 + es.a_plus * es.a_plus);
  es.v_minus = Eigen::Vector2d(1.0, es.a_minus) / std::sqrt(1.0 + es.a_minus * es.a_minus);
  return es;
}

EdgeEigenstate edge_eigenstate(const ModelParams& p, Edge which) {
  p.validate();
  const double j = 0.5 * p.M;
  EdgeEigenstate e;
  e.which = which;
  if (which == Edge::top) {
    e.central_bit = 0;
    e.dicke_k = p.M;
    e.energy = j * p.lambda + (j + 0.5) * p.B;
  } else {
    e.central_bit = 1;
    e.dicke_k = 0;
    e.energy = j * p.lambda - (j + 0.5) * p.B;
  }
  return e;
}

StateVector EdgeEigenstate::expand(int M) const {
  return central_bit == 0 ? prepare_initial(1.0, 0.0, M, dicke_k)
                          : prepare_initial(0.0, 1.0, M, dicke_k);
}

std::string EdgeEigenstate::describe() const {
  return which == Edge::top ? "|0>|j,j>" : "|1>|j,-j>";
}

} // namespace spinclone
