// SPDX-License-Identifier: Apache-2.0
#include "spinclone/cloning.hpp"
#include "spinclone/errors.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace spinclone;

namespace {

double brute_outer_fidelity(const ModelParams& p, int k, double t, const QubitAmplitudes& in, int q = 1) {
  const Eigen::VectorXcd psi0 = prepare_initial(in.alpha, in.beta, p.M, k).amplitudes();
  const Eigen::VectorXcd psi = oracle::pade_evolve(oracle::pauli_hamiltonian(p.M, p.lambda, p.B), psi0, t);
  const Eigen::Matrix2cd rho = oracle::partial_trace_full(psi, q);
  const Eigen::Vector2cd v(in.alpha, in.beta);
  return v.dot(rho * v).real();
}

} // namespace

TEST_CASE("t = 0 outputs") {
  for (int M = 1; M <= 6; ++M)
    for (int k = 0; k <= M; ++k) {
      const BlockAmplitudes a = evolve_analytic({M, 0.7, -0.3}, k, 0.0);
      CHECK(pcc_fidelity(a) == doctest::Approx(0.5).epsilon(1e-15));
      CHECK(std::abs(fidelity_closed_form(M, k, 0.7, -0.3, 0.0) - 0.5) < 1e-15);
      const QubitDensityMatrix rho = reduced_outer(a, 0.6, cplx(0.0, 0.8));
      CHECK(std::abs(rho.rho00() - double(k) / M) < 1e-15);
      CHECK(std::abs(rho.rho11() - double(M - k) / M) < 1e-15);
      CHECK(std::abs(rho.rho01()) < 1e-15);
    }
  CHECK(std::abs(kM_fidelity(4, 0.3, 1.2, 0.0) - 0.5) < 1e-15);
  for (double t : {0.0, 3.0, 100.0}) CHECK(std::abs(xx_fidelity(5, 2, 0.0, t) - 0.5) < 1e-15);
}

TEST_CASE("published XX maxima evaluate to their printed fidelity") {
  CHECK(std::abs(pcc_fidelity(evolve_analytic({2, 0.0, 0.471405}, 0, 3.33216)) - 0.853553) < 5e-6);
  CHECK(std::abs(xx_fidelity(3, 1, 0.0311526, 252.113) - 0.833319) < 5e-6);
}

TEST_CASE("state and optimal bounds") {
  CHECK(std::abs(state_bound(2, 0) - (0.5 + std::sqrt(2.0) / 4)) < 1e-15);
  CHECK(std::abs(state_bound(1, 0) - 1.0) < 1e-15);
  for (int M = 2; M <= 12; M += 2) CHECK(std::abs(state_bound(M, M / 2) - optimal_pcc_bound(M)) < 1e-15);
  CHECK(std::abs(optimal_pcc_bound(2) - 0.853553) < 5e-7);
  CHECK(std::abs(optimal_pcc_bound(5) - 0.8) < 1e-15);
  CHECK(std::abs(optimal_pcc_bound(8) - 0.779508) < 5e-7);
  CHECK_THROWS_AS(state_bound(3, 4), DomainError);
  CHECK_THROWS_AS(optimal_pcc_bound(0), DomainError);
}

TEST_CASE("closed form at the even-M preset") {
  CHECK(std::abs(fidelity_closed_form(4, 2, std::sqrt(24.0), 0.0, M_PI / std::sqrt(48.0)) - 0.806186) < 5e-7);
}

TEST_CASE("closed form agrees with block propagation") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> m(1, 6);
  std::uniform_real_distribution<double> v(-5.0, 5.0), tt(0.0, 50.0);
  for (int i = 0; i < 500; ++i) {
    const int M = m(rng);
    const int k = std::uniform_int_distribution<int>(0, M)(rng);
    const double lambda = v(rng), B = v(rng), t = tt(rng);
    const ClosedFormEvaluation e = evaluate_closed_form(M, k, lambda, B, t);
    CHECK_FALSE(e.discrepancy);
    CHECK(std::abs(e.value - e.block_value) < 1e-9);
  }
}

TEST_CASE("degenerate frequencies delegate to block propagation") {
  // k = 0 at lambda = 0, B = 0: the lower block has eta = 0 in the printed form
  const ClosedFormEvaluation e = evaluate_closed_form(3, 0, 0.0, 0.0, 1.3);
  CHECK(std::isfinite(e.value));
  CHECK(std::abs(e.value - pcc_fidelity(evolve_analytic({3, 0.0, 0.0}, 0, 1.3))) < 1e-12);
}

TEST_CASE("formula web") {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> b(-2.0, 2.0), tt(0.0, 60.0), lam(-4.0, 4.0);
  for (int M = 1; M <= 8; ++M) {
    for (int k = 0; k <= M; ++k) {
      const double B = b(rng), t = tt(rng);
      CHECK(std::abs(xx_fidelity(M, k, B, t) - fidelity_closed_form(M, k, 0.0, B, t)) < 1e-10);
      CHECK(std::abs(heisenberg_max_fidelity(M, k) -
                     fidelity_closed_form(M, k, 1.0, 0.0, M_PI / (M + 1))) < 1e-9);
    }
    const double lambda = lam(rng), B = b(rng), t = tt(rng);
    CHECK(std::abs(kM_fidelity(M, lambda, B, t) - fidelity_closed_form(M, M, lambda, B, t)) < 1e-10);
  }
  CHECK(std::abs(heisenberg_max_fidelity(2, 0) - 5.0 / 6.0) < 1e-15);
  CHECK(std::abs(heisenberg_max_fidelity(4, 2) - 0.62) < 1e-15);
  CHECK(std::abs(kM_fidelity(4, 0.0, 2.0, M_PI / 4) - 0.75) < 1e-15);
}

TEST_CASE("state bound is never exceeded") {
  std::mt19937_64 rng(107);
  std::uniform_int_distribution<int> m(1, 8);
  std::uniform_real_distribution<double> lam(-10.0, 10.0), b(-5.0, 5.0), tt(0.0, 100.0);
  for (int i = 0; i < 2000; ++i) {
    const int M = m(rng);
    const int k = std::uniform_int_distribution<int>(0, M)(rng);
    const double F = pcc_fidelity(evolve_analytic({M, lam(rng), b(rng)}, k, tt(rng)));
    CHECK(F <= state_bound(M, k) + 1e-10);
  }
}

TEST_CASE("reduced matrices are valid states and match the oracle") {
  std::mt19937_64 rng(109);
  std::uniform_int_distribution<int> m(1, 5);
  std::uniform_real_distribution<double> v(-5.0, 5.0), tt(0.0, 50.0), u(0.0, 1.0);
  for (int i = 0; i < 60; ++i) {
    const int M = m(rng);
    const int k = std::uniform_int_distribution<int>(0, M)(rng);
    const ModelParams p{M, v(rng), v(rng)};
    const double t = tt(rng);
    const QubitAmplitudes in = QubitAmplitudes::bloch(M_PI * u(rng), 2 * M_PI * u(rng));
    const BlockAmplitudes a = evolve_analytic(p, k, t);

    const Eigen::VectorXcd psi0 = prepare_initial(in.alpha, in.beta, M, k).amplitudes();
    const Eigen::VectorXcd psi = oracle::pade_evolve(oracle::pauli_hamiltonian(M, p.lambda, p.B), psi0, t);

    const QubitDensityMatrix outer = reduced_outer(a, in.alpha, in.beta);
    const QubitDensityMatrix central = reduced_central(a, in.alpha, in.beta);
    for (const QubitDensityMatrix* rho : {&outer, &central}) {
      CHECK(std::abs(rho->trace() - 1.0) < 1e-12);
      CHECK(rho->min_eigenvalue() > -1e-12);
      CHECK(rho->matrix().isApprox(rho->matrix().adjoint()));
    }
    CHECK((outer.matrix() - oracle::partial_trace_full(psi, M)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((central.matrix() - oracle::partial_trace_full(psi, 0)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("equatorial fidelity does not depend on the input phase") {
  std::mt19937_64 rng(113);
  std::uniform_real_distribution<double> v(-3.0, 3.0), tt(0.0, 20.0), ph(0.0, 2 * M_PI);
  for (int i = 0; i < 12; ++i) {
    const ModelParams p{1 + i % 5, v(rng), v(rng)};
    const int k = i % (p.M + 1);
    const double t = tt(rng);
    const double ref = clone_report(p, k, t, M_PI / 2, 0.0, Method::brute).fidelity;
    for (int j = 0; j < 5; ++j)
      CHECK(std::abs(clone_report(p, k, t, M_PI / 2, ph(rng), Method::brute).fidelity - ref) < 1e-11);
    CHECK(std::abs(ref - pcc_fidelity(evolve_analytic(p, k, t))) < 1e-10);
  }
}

TEST_CASE("optimal presets") {
  const PresetSpec two = preset_optimal(2);
  CHECK(two.name == PresetName::pcc_even);
  CHECK(two.k == 1);
  CHECK(std::abs(two.lambda - std::sqrt(8.0)) < 1e-15);
  CHECK(two.B == 0.0);
  CHECK(std::abs(two.t - M_PI / 4) < 1e-15);

  const PresetSpec three = preset_optimal(3);
  CHECK(three.name == PresetName::pcc_odd);
  CHECK(three.k == 1);
  CHECK(std::abs(three.lambda - std::sqrt(13.0)) < 1e-15);
  CHECK(std::abs(three.B - 2.0) < 1e-15);
  CHECK(std::abs(three.t - M_PI / 4) < 1e-15);
  CHECK(std::abs(three.claimed_fidelity - 0.833333) < 5e-7);

  for (int M = 2; M <= 8; ++M) {
    const PresetSpec s = preset_optimal(M);
    CHECK(std::abs(s.claimed_fidelity - optimal_pcc_bound(M)) < 1e-15);
    CHECK(std::abs(fidelity_closed_form(M, s.k, s.lambda, s.B, s.t) - s.claimed_fidelity) < 1e-9);
    CHECK(std::abs(brute_outer_fidelity(s.params(), s.k, s.t, QubitAmplitudes::equatorial(0.4)) -
                   s.claimed_fidelity) < 1e-9);
  }
  CHECK_THROWS_AS(preset_optimal(1), DomainError);
}

TEST_CASE("presets are local maxima") {
  for (int M = 2; M <= 8; ++M) {
    const PresetSpec s = preset_optimal(M);
    const double F0 = pcc_fidelity(evolve_analytic(s.params(), s.k, s.t));
    for (int axis = 0; axis < 3; ++axis)
      for (double d : {-1e-3, 1e-3}) {
        double lambda = s.lambda, B = s.B, t = s.t;
        (axis == 0 ? lambda : axis == 1 ? B : t) += d;
        const double F = pcc_fidelity(evolve_analytic({M, lambda, B}, s.k, t));
        CHECK(F - F0 <= 1e-9);
      }
  }
}

TEST_CASE("ancilla-free preset") {
  const PresetSpec s2 = preset_ancilla_free(2);
  CHECK(s2.k == 1);
  CHECK(s2.lambda == 4.0);
  CHECK(std::abs(s2.t - M_PI / std::sqrt(24.0)) < 1e-15);
  CHECK(std::abs(s2.claimed_fidelity - 5.0 / 6.0) < 1e-15);
  CHECK(std::abs(preset_ancilla_free(4).claimed_fidelity - 0.8) < 1e-15);
  CHECK_THROWS_AS(preset_ancilla_free(3), DomainError);
  CHECK_THROWS_AS(preset_ancilla_free(0), DomainError);

  for (int M : {2, 4}) {
    const PresetSpec s = preset_ancilla_free(M);
    const QubitAmplitudes in = QubitAmplitudes::equatorial(1.3);
    const Eigen::VectorXcd psi0 = prepare_initial(in.alpha, in.beta, M, s.k).amplitudes();
    const Eigen::VectorXcd psi = oracle::pade_evolve(oracle::pauli_hamiltonian(M, s.lambda, s.B), psi0, s.t);
    const Eigen::Matrix2cd first = oracle::partial_trace_full(psi, 0);
    for (int q = 1; q <= M; ++q)
      CHECK((oracle::partial_trace_full(psi, q) - first).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(brute_outer_fidelity(s.params(), s.k, s.t, in, 0) - s.claimed_fidelity) < 1e-9);
  }
}

TEST_CASE("S(M,M) preset") {
  for (int M = 1; M <= 9; ++M) {
    const PresetSpec s = preset_kM_xx(M);
    CHECK(s.k == M);
    CHECK(s.lambda == 0.0);
    CHECK(std::abs(kM_fidelity(M, s.lambda, s.B, s.t) - (0.5 + 0.5 / std::sqrt(double(M)))) < 1e-9);
  }
}

TEST_CASE("universal preset") {
  const PresetSpec u = universal_preset();
  CHECK(u.M == 2);
  CHECK(u.k == 1);
  CHECK(u.lambda == 2.0);
  CHECK(u.B == 0.0);
  CHECK(std::abs(u.t - M_PI / (2 * std::sqrt(3.0))) < 1e-15);

  const QubitDensityMatrix basis0 = universal_reference_matrix(1.0, 0.0);
  CHECK(std::abs(basis0.rho00() - 5.0 / 6.0) < 1e-15);
  CHECK(std::abs(basis0.rho11() - 1.0 / 6.0) < 1e-15);
  const double r2 = 1 / std::sqrt(2.0);
  CHECK(std::abs(universal_reference_matrix(r2, r2).rho01() - 1.0 / 3.0) < 1e-15);

  const BlockAmplitudes a = evolve_analytic(u.params(), u.k, u.t);
  std::mt19937_64 rng(127);
  std::uniform_real_distribution<double> x(0.0, 1.0);
  double sum = 0.0, sum2 = 0.0;
  const int n = 100;
  for (int i = 0; i < n; ++i) {
    const QubitAmplitudes in = QubitAmplitudes::bloch(std::acos(1 - 2 * x(rng)), 2 * M_PI * x(rng));
    const QubitDensityMatrix rho = reduced_outer(a, in.alpha, in.beta);
    CHECK(rho.max_abs_diff(universal_reference_matrix(in.alpha, in.beta)) < 1e-10);
    const double F = brute_outer_fidelity(u.params(), u.k, u.t, in);
    CHECK(std::abs(F - 5.0 / 6.0) < 1e-10);
    sum += F;
    sum2 += F * F;
  }
  CHECK(std::max(0.0, sum2 / n - (sum / n) * (sum / n)) <= 1e-20);
}

TEST_CASE("clone_report routes agree") {
  const ModelParams p{3, 0.8, 0.3};
  const CloneReport an = clone_report(p, 1, 4.2, M_PI / 2, 0.9, Method::analytic);
  const CloneReport cf = clone_report(p, 1, 4.2, M_PI / 2, 0.9, Method::closed_form);
  const CloneReport br = clone_report(p, 1, 4.2, M_PI / 2, 0.9, Method::brute);
  CHECK(std::abs(an.fidelity - cf.fidelity) < 1e-10);
  CHECK(std::abs(an.fidelity - br.fidelity) < 1e-10);
  REQUIRE(br.qubit_fidelities.size() == 4);
  REQUIRE(an.qubit_fidelities.size() == 4);
  for (std::size_t q = 0; q < 4; ++q) {
    CHECK(std::abs(an.qubit_fidelities[q] - br.qubit_fidelities[q]) < 1e-10);
    CHECK(br.qubit_fidelities[q] >= -1e-12);
    CHECK(br.qubit_fidelities[q] <= 1 + 1e-12);
  }
  CHECK(an.amplitudes.has_value());
  CHECK_THROWS_AS(clone_report(p, 1, 4.2, 0.3, 0.9, Method::closed_form), DomainError);

  CHECK(method_from_string("closed-form") == Method::closed_form);
  CHECK(method_from_string("closed_form") == Method::closed_form);
  CHECK(method_from_string("brute") == Method::brute);
  CHECK_FALSE(method_from_string("exact").has_value());
}
