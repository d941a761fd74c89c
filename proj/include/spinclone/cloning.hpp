// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spinclone/dynamics.hpp"
#include "spinclone/hilbert.hpp"
#include "spinclone/star_model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spinclone {

// ---------------------------------------------------------------------------
// Reduced states and fidelities from block amplitudes
// ---------------------------------------------------------------------------

/// Single outer-qubit state after evolution of (alpha|0> + beta|1>)|S(M,k)>.
/// All outer qubits share it by permutation symmetry. Throws
/// FormulaInconsistencyError if the trace drifts from 1 by more than 1e-9.
QubitDensityMatrix reduced_outer(const BlockAmplitudes& amp, cplx alpha, cplx beta);

/// Central-qubit state for the same evolution.
QubitDensityMatrix reduced_central(const BlockAmplitudes& amp, cplx alpha, cplx beta);

/// Equatorial-input clone fidelity; independent of the input phase.
double pcc_fidelity(const BlockAmplitudes& amp);

// ---------------------------------------------------------------------------
// Closed forms and bounds
// ---------------------------------------------------------------------------

/// Disagreement above which the closed form is reported as inconsistent with
/// block propagation.
inline constexpr double kPrintedFormulaTol = 1e-6;
/// Below this either frequency eta is treated as degenerate.
inline constexpr double kEtaDegenerateTol = 1e-12;

/// Verbatim chi/eta closed form. Returns NaN when either eta vanishes.
double printed_closed_form(int M, int k, double lambda, double B, double t);

struct ClosedFormEvaluation {
  double value = 0.0;        ///< exported fidelity
  double block_value = 0.0;  ///< pcc_fidelity(evolve_analytic(...))
  bool delegated = false;    ///< eta degenerate, value taken from block path
  bool discrepancy = false;  ///< |printed - block| > kPrintedFormulaTol
};

ClosedFormEvaluation evaluate_closed_form(int M, int k, double lambda, double B, double t);

/// Closed-form equatorial fidelity. Falls back to block propagation when
/// either eta is degenerate or the printed form disagrees with it.
double fidelity_closed_form(int M, int k, double lambda, double B, double t);

/// Upper bound on equatorial fidelity for initial outer state S(M, k).
double state_bound(int M, int k);

/// Optimal 1 -> M phase-covariant cloning fidelity.
double optimal_pcc_bound(int M);

/// XX-model (lambda = 0) equatorial fidelity.
double xx_fidelity(int M, int k, double B, double t);

/// Heisenberg model (lambda = 1, B = 0) fidelity at t = pi/(M+1).
double heisenberg_max_fidelity(int M, int k);

/// Equatorial fidelity for the outer register initialised to S(M, M).
double kM_fidelity(int M, double lambda, double B, double t);

/// Reference outer-qubit state of the universal 1 -> 2 cloner:
///   (1/6) [[5|a|^2 + |b|^2, 4 a b*], [4 a* b, |a|^2 + 5|b|^2]]
QubitDensityMatrix universal_reference_matrix(cplx alpha, cplx beta);

// ---------------------------------------------------------------------------
// Parameter presets
// ---------------------------------------------------------------------------

enum class PresetName { pcc_even, pcc_odd, ancilla_free, kM_xx, universal_1to2 };

std::string_view to_string(PresetName name);

struct PresetSpec {
  PresetName name = PresetName::pcc_even;
  int M = 0;
  int k = 0;
  double lambda = 0.0;
  double B = 0.0;
  double t = 0.0;
  double claimed_fidelity = 0.0;

  ModelParams params() const { return {M, lambda, B}; }
};

/// Optimal-fidelity parameters for even or odd M >= 2.
PresetSpec preset_optimal(int M);

/// Every qubit, central included, ends up as an equal clone. Requires even M_outer >= 2.
PresetSpec preset_ancilla_free(int M_outer);

/// XX model, outer register S(M, M): lambda = 0, B = sqrt(M), t = pi/(2 sqrt(M)).
PresetSpec preset_kM_xx(int M);

/// 1 -> 2 universal cloner: M = 2, k = 1, lambda = 2, B = 0, t = pi/(2 sqrt(3)).
PresetSpec universal_preset();

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

enum class Method { analytic, closed_form, brute };

std::string_view to_string(Method m);
std::optional<Method> method_from_string(std::string_view s);

struct CloneReport {
  ModelParams params;
  int k = 0;
  double t = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  Method method = Method::analytic;
  /// <psi_in|rho_q|psi_in> for q = 0 (central) .. M.
  std::vector<double> qubit_fidelities;
  /// Fidelity of an outer clone for the given input.
  double fidelity = 0.0;
  /// Fidelity of an outer clone for the equatorial input with the same phi.
  double equatorial_fidelity = 0.0;
  std::optional<BlockAmplitudes> amplitudes;
};

/// Evaluates clone fidelities of input (theta, phi) by the requested route.
/// The closed-form route only covers equatorial inputs (theta = pi/2).
/// `cache` is used by the brute route when given.
CloneReport clone_report(const ModelParams& p, int k, double t, double theta, double phi,
                         Method method, PropagatorCache* cache = nullptr);

} // namespace spinclone
