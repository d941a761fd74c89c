// SPDX-License-Identifier: Apache-2.0
#include "spinclone/hilbert.hpp"

#include "spinclone/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace spinclone {

namespace {

constexpr double kNormTol = 1e-10;

int count_zero_bits(std::size_t index, int n_bits) {
  return n_bits - std::popcount(index);
}

} // namespace

StateVector::StateVector(int n_qubits, Eigen::VectorXcd amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_qubits < 1 || n_qubits > 30)
    throw DomainError("StateVector: qubit count out of range: " + std::to_string(n_qubits));
  if (amps_.size() != (Eigen::Index{1} << n_qubits))
    throw DomainError("StateVector: amplitude count does not match 2^n_qubits");
}

StateVector StateVector::basis(int n_qubits, std::size_t index) {
  if (n_qubits < 1 || n_qubits > 30 || index >= (std::size_t{1} << n_qubits))
    throw DomainError("StateVector::basis: index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return {n_qubits, std::move(v)};
}

cplx StateVector::inner(const StateVector& other) const {
  if (other.n_qubits_ != n_qubits_)
    throw DomainError("StateVector::inner: qubit counts differ");
  return amps_.dot(other.amps_);
}

QubitDensityMatrix QubitDensityMatrix::from_matrix(const Eigen::Matrix2cd& m, double tol) {
  const double herm = std::max({std::abs(m(0, 0).imag()), std::abs(m(1, 1).imag()),
                                std::abs(m(1, 0) - std::conj(m(0, 1)))});
  if (herm > tol)
    throw FormulaInconsistencyError("QubitDensityMatrix: input is not Hermitian");
  return {m(0, 0).real(), 0.5 * (m(0, 1) + std::conj(m(1, 0))), m(1, 1).real()};
}

cplx QubitDensityMatrix::operator()(int row, int col) const {
  if (row == 0 && col == 0) return p0_;
  if (row == 0 && col == 1) return c01_;
  if (row == 1 && col == 0) return rho10();
  if (row == 1 && col == 1) return p1_;
  throw DomainError("QubitDensityMatrix: index out of range");
}

double QubitDensityMatrix::min_eigenvalue() const {
  const double mean = 0.5 * (p0_ + p1_);
  const double half_gap = std::hypot(0.5 * (p0_ - p1_), std::abs(c01_));
  return mean - half_gap;
}

Eigen::Matrix2cd QubitDensityMatrix::matrix() const {
  Eigen::Matrix2cd m;
  m << p0_, c01_, rho10(), p1_;
  return m;
}

bool QubitDensityMatrix::is_valid(double tol) const {
  return std::abs(trace() - 1.0) <= tol && min_eigenvalue() >= -tol;
}

double QubitDensityMatrix::max_abs_diff(const QubitDensityMatrix& o) const {
  return std::max({std::abs(p0_ - o.p0_), std::abs(p1_ - o.p1_), std::abs(c01_ - o.c01_)});
}

QubitAmplitudes QubitAmplitudes::bloch(double theta, double phi) {
  return {std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)};
}

QubitAmplitudes QubitAmplitudes::equatorial(double phi) {
  return bloch(M_PI / 2, phi);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i)
    c = c * (n - k + i) / i;
  return std::round(c);
}

StateVector dicke_state(int M, int k) {
  if (M < 1) throw DomainError("dicke_state: M must be >= 1");
  if (k < 0 || k > M)
    throw DomainError("dicke_state: k=" + std::to_string(k) + " outside [0, " +
                      std::to_string(M) + "]");
  const std::size_t dim = std::size_t{1} << M;
  const double amp = 1.0 / std::sqrt(binomial(M, k));
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t s = 0; s < dim; ++s)
    if (count_zero_bits(s, M) == k) v[static_cast<Eigen::Index>(s)] = amp;
  return {M, std::move(v)};
}

StateVector prepare_initial(cplx alpha, cplx beta, int M, int k) {
  const double n2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(n2 - 1.0) > kNormTol)
    throw DomainError("prepare_initial: |alpha|^2 + |beta|^2 = " + std::to_string(n2) +
                      ", expected 1");
  const StateVector outer = dicke_state(M, k);
  const auto dim = static_cast<Eigen::Index>(outer.dim());
  Eigen::VectorXcd v(2 * dim);
  // Central qubit is the least-significant bit.
  for (Eigen::Index s = 0; s < dim; ++s) {
    v[2 * s] = alpha * outer.amplitudes()[s];
    v[2 * s + 1] = beta * outer.amplitudes()[s];
  }
  return {M + 1, std::move(v)};
}

QubitDensityMatrix reduce_qubit(const StateVector& psi, int qubit_index) {
  if (qubit_index < 0 || qubit_index >= psi.n_qubits())
    throw DomainError("reduce_qubit: qubit index " + std::to_string(qubit_index) +
                      " out of range");
  const std::size_t mask = std::size_t{1} << qubit_index;
  const auto& a = psi.amplitudes();
  double p0 = 0.0, p1 = 0.0;
  cplx c01 = 0.0;
  for (std::size_t s = 0; s < psi.dim(); ++s) {
    if (s & mask) continue;
    const cplx a0 = a[static_cast<Eigen::Index>(s)];
    const cplx a1 = a[static_cast<Eigen::Index>(s | mask)];
    p0 += std::norm(a0);
    p1 += std::norm(a1);
    c01 += a0 * std::conj(a1);
  }
  return {p0, c01, p1};
}

double fidelity_pure(const QubitDensityMatrix& rho, cplx alpha, cplx beta) {
  // <psi|rho|psi> with rho Hermitian is real; the cross term appears twice.
  return std::norm(alpha) * rho.rho00() + std::norm(beta) * rho.rho11() +
         2.0 * std::real(std::conj(alpha) * rho.rho01() * beta);
}

} // namespace spinclone
