// SPDX-License-Identifier: Apache-2.0
#include "spinclone/verify.hpp"

#include "spinclone/cloning.hpp"
#include "spinclone/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace spinclone {

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void SuiteReport::add(std::string name, double residual, double tolerance) {
  checks.push_back({std::move(name), residual, tolerance, residual <= tolerance});
}

std::string_view to_string(Suite s) {
  switch (s) {
  case Suite::optimal_pcc: return "optimal-pcc";
  case Suite::universal: return "universal";
  case Suite::ancilla_free: return "ancilla-free";
  case Suite::oracle: return "oracle";
  case Suite::bounds: return "bounds";
  }
  return "unknown";
}

std::optional<Suite> suite_from_string(std::string_view s) {
  for (Suite v : {Suite::optimal_pcc, Suite::universal, Suite::ancilla_free, Suite::oracle,
                  Suite::bounds})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

namespace {

double outer_fidelity_brute(const BrutePropagator& prop, int k, double t, const QubitAmplitudes& in,
                            int qubit = 1) {
  const StateVector psi = prop.evolve(prepare_initial(in.alpha, in.beta, prop.params().M, k), t);
  return fidelity_pure(reduce_qubit(psi, qubit), in.alpha, in.beta);
}

SuiteReport optimal_pcc() {
  SuiteReport rep{"optimal-pcc", {}};
  for (int M = 2; M <= 8; ++M) {
    const PresetSpec s = preset_optimal(M);
    const double bound = optimal_pcc_bound(M);
    const std::string tag = "M=" + std::to_string(M);
    rep.add(tag + " closed-form", std::abs(fidelity_closed_form(M, s.k, s.lambda, s.B, s.t) - bound),
            1e-9);
    const BrutePropagator prop(s.params());
    rep.add(tag + " brute", std::abs(outer_fidelity_brute(prop, s.k, s.t, QubitAmplitudes::equatorial(0.0)) - bound),
            1e-8);
  }
  return rep;
}

SuiteReport universal(const SuiteOptions& opts) {
  SuiteReport rep{"universal", {}};
  const int n = opts.trials > 0 ? opts.trials : 100;
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  const PresetSpec s = universal_preset();
  const BrutePropagator prop(s.params());
  double max_matrix = 0.0, max_fid = 0.0, sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double theta = std::acos(1.0 - 2.0 * u(rng));
    const double phi = 2.0 * M_PI * u(rng);
    const QubitAmplitudes in = QubitAmplitudes::bloch(theta, phi);
    const StateVector psi = prop.evolve(prepare_initial(in.alpha, in.beta, s.M, s.k), s.t);
    const QubitDensityMatrix ref = universal_reference_matrix(in.alpha, in.beta);
    for (int q = 1; q <= s.M; ++q) {
      const QubitDensityMatrix rho = reduce_qubit(psi, q);
      max_matrix = std::max(max_matrix, rho.max_abs_diff(ref));
      const double F = fidelity_pure(rho, in.alpha, in.beta);
      max_fid = std::max(max_fid, std::abs(F - 5.0 / 6.0));
      if (q == 1) {
        sum += F;
        sum2 += F * F;
      }
    }
  }
  const double mean = sum / n;
  const double var = std::max(0.0, sum2 / n - mean * mean);
  rep.add("reduced matrix vs reference (" + std::to_string(n) + " inputs)", max_matrix, 1e-10);
  rep.add("|F - 5/6|", max_fid, 1e-10);
  rep.add("fidelity variance", var, 1e-20);
  return rep;
}

SuiteReport ancilla_free(const SuiteOptions& opts) {
  SuiteReport rep{"ancilla-free", {}};
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  for (int M : {2, 4, 6}) {
    const PresetSpec s = preset_ancilla_free(M);
    const BrutePropagator prop(s.params());
    const QubitAmplitudes in = QubitAmplitudes::equatorial(u(rng));
    const StateVector psi = prop.evolve(prepare_initial(in.alpha, in.beta, M, s.k), s.t);
    const QubitDensityMatrix first = reduce_qubit(psi, 0);
    double spread = 0.0, fid = 0.0;
    for (int q = 0; q <= M; ++q) {
      const QubitDensityMatrix rho = reduce_qubit(psi, q);
      spread = std::max(spread, rho.max_abs_diff(first));
      fid = std::max(fid, std::abs(fidelity_pure(rho, in.alpha, in.beta) - s.claimed_fidelity));
    }
    const std::string tag = "M_outer=" + std::to_string(M);
    rep.add(tag + " reduced-matrix spread", spread, 1e-10);
    rep.add(tag + " |F - bound|", fid, 1e-9);
  }
  return rep;
}

SuiteReport oracle(const SuiteOptions& opts) {
  SuiteReport rep{"oracle", {}};
  const int n = opts.trials > 0 ? opts.trials : 200;
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> m_dist(1, 6);
  std::uniform_real_distribution<double> sym(-5.0, 5.0), tdist(0.0, 50.0), ph(0.0, 2 * M_PI);

  double amp = 0.0, closed = 0.0, rho_res = 0.0, bound = -1.0;
  int delegated = 0, discrepancies = 0;
  for (int i = 0; i < n; ++i) {
    const int M = m_dist(rng);
    const int k = std::uniform_int_distribution<int>(0, M)(rng);
    const ModelParams p{M, sym(rng), sym(rng)};
    const double t = tdist(rng);

    const BlockAmplitudes a = evolve_analytic(p, k, t);
    const BrutePropagator prop(p);
    const BlockAmplitudes b = amplitudes_from_brute_force(prop, k, t);
    amp = std::max(amp, a.max_abs_diff(b));

    const ClosedFormEvaluation cf = evaluate_closed_form(M, k, p.lambda, p.B, t);
    if (cf.delegated) {
      ++delegated;
    } else {
      const double printed = printed_closed_form(M, k, p.lambda, p.B, t);
      closed = std::max({closed, std::abs(printed - pcc_fidelity(a)), std::abs(printed - pcc_fidelity(b))});
      discrepancies += cf.discrepancy;
    }

    const QubitAmplitudes in = QubitAmplitudes::equatorial(ph(rng));
    const StateVector psi = prop.evolve(prepare_initial(in.alpha, in.beta, M, k), t);
    rho_res = std::max(rho_res, reduced_outer(a, in.alpha, in.beta).max_abs_diff(reduce_qubit(psi, 1)));
    bound = std::max(bound, pcc_fidelity(a) - state_bound(M, k));
  }
  rep.add("analytic vs brute amplitudes", amp, 1e-10);
  rep.add("closed form vs block paths (" + std::to_string(delegated) + " delegated)", closed, 1e-9);
  rep.add("closed-form discrepancy flags", discrepancies, 0.0);
  rep.add("reduced_outer vs partial trace", rho_res, 1e-10);
  rep.add("max(F - state_bound)", std::max(0.0, bound), 1e-10);
  return rep;
}

SuiteReport bounds(const SuiteOptions& opts) {
  SuiteReport rep{"bounds", {}};
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> m_dist(1, 8);
  std::uniform_real_distribution<double> lam(-10.0, 10.0), bf(-5.0, 5.0), tdist(0.0, 100.0);
  double excess = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const int M = m_dist(rng);
    const int k = std::uniform_int_distribution<int>(0, M)(rng);
    const double F = pcc_fidelity(evolve_analytic({M, lam(rng), bf(rng)}, k, tdist(rng)));
    excess = std::max(excess, F - state_bound(M, k));
  }
  rep.add("state bound excess (2000 samples)", excess, 1e-10);

  double heis = 0.0;
  for (int M = 1; M <= 8; ++M) {
    const double t = M_PI / (M + 1);
    const BrutePropagator prop({M, 1.0, 0.0});
    for (int k = 0; k <= M; ++k)
      heis = std::max(heis, std::abs(heisenberg_max_fidelity(M, k) -
                                     outer_fidelity_brute(prop, k, t, QubitAmplitudes::equatorial(0.0))));
  }
  rep.add("Heisenberg maximum vs brute (M<=8)", heis, 1e-9);

  double km = 0.0;
  for (int M = 1; M <= 9; ++M) {
    const PresetSpec s = preset_kM_xx(M);
    km = std::max(km, std::abs(kM_fidelity(M, s.lambda, s.B, s.t) - s.claimed_fidelity));
  }
  rep.add("S(M,M) maximizer value (M<=9)", km, 1e-9);
  return rep;
}

} // namespace

SuiteReport run_suite(Suite s, const SuiteOptions& opts) {
  switch (s) {
  case Suite::optimal_pcc: return optimal_pcc();
  case Suite::universal: return universal(opts);
  case Suite::ancilla_free: return ancilla_free(opts);
  case Suite::oracle: return oracle(opts);
  case Suite::bounds: return bounds(opts);
  }
  return {};
}

} // namespace spinclone
