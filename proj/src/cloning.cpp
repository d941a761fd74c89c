// SPDX-License-Identifier: Apache-2.0
#include "spinclone/cloning.hpp"

#include "spinclone/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace spinclone {

namespace {

constexpr double kTraceTol = 1e-9;

void check_mk(int M, int k) {
  if (M < 1) throw DomainError("M must be >= 1, got " + std::to_string(M));
  if (k < 0 || k > M)
    throw DomainError("k=" + std::to_string(k) + " outside [0, " + std::to_string(M) + "]");
}

// Transition weights between neighbouring symmetric outer states.
double weight_g(int M, int k) { return std::sqrt(double(k) * (M - k + 1)); }
double weight_f(int M, int k) { return std::sqrt(double(k + 1) * (M - k)); }

} // namespace

QubitDensityMatrix reduced_outer(const BlockAmplitudes& amp, cplx alpha, cplx beta) {
  const int M = amp.params.M;
  const int k = amp.k;
  check_mk(M, k);
  const double a2 = std::norm(alpha);
  const double b2 = std::norm(beta);
  const double f1 = std::norm(amp.f1), f2 = std::norm(amp.f2);
  const double g1 = std::norm(amp.g1), g2 = std::norm(amp.g2);

  const double rho00 =
      (a2 * (k * f1 + (k + 1) * f2) + b2 * ((k - 1) * g1 + k * g2)) / M;
  const double rho11 =
      (a2 * ((M - k) * f1 + (M - k - 1) * f2) + b2 * ((M - k + 1) * g1 + (M - k) * g2)) / M;
  const cplx rho01 = alpha * std::conj(beta) *
                     (weight_g(M, k) * amp.f1 * std::conj(amp.g1) +
                      weight_f(M, k) * amp.f2 * std::conj(amp.g2)) /
                     double(M);

  QubitDensityMatrix rho(rho00, rho01, rho11);
  if (std::abs(rho.trace() - 1.0) > kTraceTol)
    throw FormulaInconsistencyError("reduced_outer: trace " + std::to_string(rho.trace()) +
                                    " differs from 1");
  return rho;
}

QubitDensityMatrix reduced_central(const BlockAmplitudes& amp, cplx alpha, cplx beta) {
  const double a2 = std::norm(alpha);
  const double b2 = std::norm(beta);
  // Only |0>|S(k)> (f1) and |1>|S(k)> (g2) share an outer state.
  return {a2 * std::norm(amp.f1) + b2 * std::norm(amp.g1),
          alpha * std::conj(beta) * amp.f1 * std::conj(amp.g2),
          a2 * std::norm(amp.f2) + b2 * std::norm(amp.g2)};
}

double pcc_fidelity(const BlockAmplitudes& amp) {
  const int M = amp.params.M;
  const int k = amp.k;
  const double c1 = 2.0 * std::real(std::conj(amp.f1) * amp.g1);
  const double c2 = 2.0 * std::real(std::conj(amp.f2) * amp.g2);
  return 0.25 * (2.0 + weight_g(M, k) / M * c1 + weight_f(M, k) / M * c2);
}

double printed_closed_form(int M, int k, double lambda, double B, double t) {
  check_mk(M, k);
  const double d1 = M - 2.0 * k - 1.0;
  const double d2 = M - 2.0 * k + 1.0;
  const double eta1 = std::sqrt(4.0 * (M - k) * (k + 1) + d1 * d1 * lambda * lambda);
  const double eta2 = std::sqrt(4.0 * k * (M - k + 1) + d2 * d2 * lambda * lambda);
  if (eta1 < kEtaDegenerateTol || eta2 < kEtaDegenerateTol)
    return std::numeric_limits<double>::quiet_NaN();

  const double s1 = std::sin(eta1 * t / 2), c1 = std::cos(eta1 * t / 2);
  const double s2 = std::sin(eta2 * t / 2), c2 = std::cos(eta2 * t / 2);
  const double sb = std::sin(B * t), cb = std::cos(B * t);
  const double chi1 = eta1 * c1 * sb * s2 - lambda * d1 * s1 * cb * s2;
  const double chi2 = eta2 * c2 * sb * s1 - lambda * d2 * s2 * cb * s1;
  return 0.5 + (double(k) * (M - k + 1) * chi1 - double(M - k) * (k + 1) * chi2) /
                   (M * eta1 * eta2);
}

ClosedFormEvaluation evaluate_closed_form(int M, int k, double lambda, double B, double t) {
  ClosedFormEvaluation ev;
  ev.block_value = pcc_fidelity(evolve_analytic({M, lambda, B}, k, t));
  const double printed = printed_closed_form(M, k, lambda, B, t);
  if (std::isnan(printed)) {
    ev.delegated = true;
    ev.value = ev.block_value;
    return ev;
  }
  ev.discrepancy = std::abs(printed - ev.block_value) > kPrintedFormulaTol;
  ev.value = ev.discrepancy ? ev.block_value : printed;
  return ev;
}

double fidelity_closed_form(int M, int k, double lambda, double B, double t) {
  return evaluate_closed_form(M, k, lambda, B, t).value;
}

double state_bound(int M, int k) {
  check_mk(M, k);
  return 0.5 + std::max(weight_g(M, k), weight_f(M, k)) / (2.0 * M);
}

double optimal_pcc_bound(int M) {
  if (M < 1) throw DomainError("optimal_pcc_bound: M must be >= 1");
  if (M % 2 == 0) return 0.5 + std::sqrt(double(M) * (M + 2)) / (4.0 * M);
  return 0.5 + (M + 1.0) / (4.0 * M);
}

double xx_fidelity(int M, int k, double B, double t) {
  check_mk(M, k);
  const double gamma1 = weight_g(M, k) + weight_f(M, k);
  const double gamma2 = weight_g(M, k) - weight_f(M, k);
  return 0.5 + (gamma1 * std::sin(gamma2 * t) + gamma2 * std::sin(gamma1 * t)) *
                   std::sin(B * t) / (4.0 * M);
}

double heisenberg_max_fidelity(int M, int k) {
  check_mk(M, k);
  const double mp1 = M + 1.0;
  return 0.5 + 1.0 / mp1 - 2.0 * k * (M - k) / (M * mp1 * mp1);
}

double kM_fidelity(int M, double lambda, double B, double t) {
  if (M < 1) throw DomainError("kM_fidelity: M must be >= 1");
  const double root = std::sqrt(4.0 * M + (M - 1.0) * (M - 1.0) * lambda * lambda);
  const double base = 2.0 * B + (1.0 + M) * lambda;
  return 0.5 + (std::cos((base - root) * t / 2) - std::cos((base + root) * t / 2)) / (2.0 * root);
}

QubitDensityMatrix universal_reference_matrix(cplx alpha, cplx beta) {
  const double a2 = std::norm(alpha), b2 = std::norm(beta);
  return {(5.0 * a2 + b2) / 6.0, 4.0 * alpha * std::conj(beta) / 6.0, (a2 + 5.0 * b2) / 6.0};
}

std::string_view to_string(PresetName name) {
  switch (name) {
  case PresetName::pcc_even: return "pcc_even";
  case PresetName::pcc_odd: return "pcc_odd";
  case PresetName::ancilla_free: return "ancilla_free";
  case PresetName::kM_xx: return "kM_xx";
  case PresetName::universal_1to2: return "universal_1to2";
  }
  return "unknown";
}

PresetSpec preset_optimal(int M) {
  if (M < 2) throw DomainError("preset_optimal: M must be >= 2, got " + std::to_string(M));
  PresetSpec s;
  s.M = M;
  if (M % 2 == 0) {
    s.name = PresetName::pcc_even;
    s.k = M / 2;
    s.lambda = std::sqrt(double(M) * (M + 2));
    s.B = 0.0;
    s.t = M_PI / std::sqrt(2.0 * M * (M + 2));
  } else {
    s.name = PresetName::pcc_odd;
    s.k = (M - 1) / 2;
    s.lambda = std::sqrt(0.75 * (M + 1.0) * (M + 1.0) + 1.0);
    s.B = (M + 1.0) / 2.0;
    s.t = M_PI / (M + 1.0);
  }
  s.claimed_fidelity = optimal_pcc_bound(M);
  return s;
}

PresetSpec preset_ancilla_free(int M_outer) {
  if (M_outer < 2 || M_outer % 2 != 0)
    throw DomainError("preset_ancilla_free: outer count must be even and >= 2, got " +
                      std::to_string(M_outer));
  PresetSpec s;
  s.name = PresetName::ancilla_free;
  s.M = M_outer;
  s.k = M_outer / 2;
  s.lambda = M_outer + 2.0;
  s.B = 0.0;
  s.t = M_PI / std::sqrt(2.0 * (M_outer + 1) * (M_outer + 2));
  s.claimed_fidelity = optimal_pcc_bound(M_outer + 1);
  return s;
}

PresetSpec preset_kM_xx(int M) {
  if (M < 1) throw DomainError("preset_kM_xx: M must be >= 1");
  PresetSpec s;
  s.name = PresetName::kM_xx;
  s.M = M;
  s.k = M;
  s.lambda = 0.0;
  s.B = std::sqrt(double(M));
  s.t = M_PI / (2.0 * std::sqrt(double(M)));
  s.claimed_fidelity = 0.5 + 1.0 / (2.0 * std::sqrt(double(M)));
  return s;
}

PresetSpec universal_preset() {
  PresetSpec s;
  s.name = PresetName::universal_1to2;
  s.M = 2;
  s.k = 1;
  s.lambda = 2.0;
  s.B = 0.0;
  s.t = M_PI / (2.0 * std::sqrt(3.0));
  s.claimed_fidelity = 5.0 / 6.0;
  return s;
}

std::string_view to_string(Method m) {
  switch (m) {
  case Method::analytic: return "analytic";
  case Method::closed_form: return "closed-form";
  case Method::brute: return "brute";
  }
  return "unknown";
}

std::optional<Method> method_from_string(std::string_view s) {
  if (s == "analytic") return Method::analytic;
  if (s == "closed-form" || s == "closed_form") return Method::closed_form;
  if (s == "brute") return Method::brute;
  return std::nullopt;
}

CloneReport clone_report(const ModelParams& p, int k, double t, double theta, double phi,
                         Method method, PropagatorCache* cache) {
  p.validate();
  check_mk(p.M, k);
  if (method == Method::closed_form && std::abs(theta - M_PI / 2) > 1e-12)
    throw DomainError("clone_report: the closed-form route covers equatorial inputs only");

  CloneReport r;
  r.params = p;
  r.k = k;
  r.t = t;
  r.theta = theta;
  r.phi = phi;
  r.method = method;

  const QubitAmplitudes in = QubitAmplitudes::bloch(theta, phi);
  const QubitAmplitudes eq = QubitAmplitudes::equatorial(phi);

  if (method == Method::brute) {
    std::shared_ptr<const BrutePropagator> prop =
        cache ? cache->get(p) : std::make_shared<const BrutePropagator>(p);
    const StateVector psi = prop->evolve(prepare_initial(in.alpha, in.beta, p.M, k), t);
    r.qubit_fidelities.reserve(p.M + 1);
    for (int q = 0; q <= p.M; ++q)
      r.qubit_fidelities.push_back(fidelity_pure(reduce_qubit(psi, q), in.alpha, in.beta));
    r.fidelity = r.qubit_fidelities[1];
    if (std::abs(theta - M_PI / 2) <= 1e-12) {
      r.equatorial_fidelity = r.fidelity;
    } else {
      const StateVector psi_eq = prop->evolve(prepare_initial(eq.alpha, eq.beta, p.M, k), t);
      r.equatorial_fidelity = fidelity_pure(reduce_qubit(psi_eq, 1), eq.alpha, eq.beta);
    }
    return r;
  }

  const BlockAmplitudes amp = evolve_analytic(p, k, t);
  r.amplitudes = amp;
  const double outer = fidelity_pure(reduced_outer(amp, in.alpha, in.beta), in.alpha, in.beta);
  r.qubit_fidelities.assign(p.M + 1, outer);
  r.qubit_fidelities[0] =
      fidelity_pure(reduced_central(amp, in.alpha, in.beta), in.alpha, in.beta);
  if (method == Method::closed_form) {
    r.equatorial_fidelity = fidelity_closed_form(p.M, k, p.lambda, p.B, t);
    r.fidelity = r.equatorial_fidelity;
  } else {
    r.equatorial_fidelity = pcc_fidelity(amp);
    r.fidelity = outer;
  }
  return r;
}

} // namespace spinclone
