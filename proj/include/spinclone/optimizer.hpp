// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace spinclone {

/// Fidelity as a function of (k, lambda, B, t). Must be pure and thread-safe.
using Objective = std::function<double(int k, double lambda, double B, double t)>;

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  /// i-th of n equally spaced points, endpoints included.
  double point(int i, int n) const { return n == 1 ? lo : lo + width() * i / (n - 1); }
  double clip(double x) const { return x < lo ? lo : (x > hi ? hi : x); }
};

struct SearchBox {
  Range B{0.01, 1.0};
  Range t{0.0, 300.0};
  Range lambda{0.0, 0.0};   ///< lo == hi fixes lambda
  std::vector<int> k_candidates{0};
  int n_B = 201;
  int n_t = 30001;
  int n_lambda = 1;
  int refine_iters = 4000;
  double refine_tol = 1e-8;

  /// Throws DomainError on inverted ranges, grid counts below 2 (lambda may
  /// use a single point when fixed), empty k set or non-positive tolerance.
  void validate() const;

  /// XX-model search over B in [0.01, 1], t in [0, 300] with dt = 0.01 and
  /// every k in 0..M.
  static SearchBox xx_table(int M);
};

struct Candidate {
  int k = 0;
  double lambda = 0.0;
  double B = 0.0;
  double t = 0.0;
  double F = 0.0;
};

/// Total order used for every argmax: higher F wins, then smaller t, smaller
/// B, smaller k, smaller lambda. NaN ranks below every number.
bool better(const Candidate& a, const Candidate& b);

struct OptResult {
  Candidate best;
  /// Best candidate for each entry of k_candidates, same order.
  std::vector<Candidate> per_k;
  std::size_t evaluations = 0;
  bool refined = false;
  /// best.F minus the best F reached with any other k; 0 for a single k.
  double runner_up_gap = 0.0;
};

/// Worker count from SPINCLONE_THREADS, else hardware concurrency (at least 1).
unsigned default_workers();

/// Exhaustive scan over k_candidates x lambda x B x t. The result does not
/// depend on `workers`.
OptResult grid_scan(const Objective& objective, const SearchBox& box, unsigned workers = 0);

struct RefineResult {
  Candidate best;
  int iterations = 0;
  std::size_t evaluations = 0;
  /// Best F after each iteration; non-decreasing.
  std::vector<double> history;
};

/// Box-clipped Nelder-Mead ascent over (B, t) at fixed k and lambda. The
/// initial simplex spans one grid cell of `box`. Stops once every vertex lies
/// within refine_tol of the best one, or after refine_iters iterations.
RefineResult refine_local(const Objective& objective, const Candidate& start,
                          const SearchBox& box);

/// grid_scan followed by refine_local from the best grid point of each k.
OptResult optimize(const Objective& objective, const SearchBox& box, unsigned workers = 0);

/// Published XX-model maxima for M = 2..8 over B in [0.01, 1], t in [0, 300].
struct ReferenceXXMaximum {
  int M;
  double F_optimal;
  double F_max;
  double t;
  double B;
  int k;
};

std::span<const ReferenceXXMaximum> reference_xx_maxima();

struct Table1Row {
  int M = 0;
  double F_optimal = 0.0;   ///< optimal_pcc_bound(M)
  Candidate found;          ///< optimizer maximum of xx_fidelity
  ReferenceXXMaximum reference{};
  double reference_F_eval = 0.0;  ///< xx_fidelity at the reference (k, B, t)
  double deviation = 0.0;         ///< found.F - reference.F_max
  bool flagged = false;           ///< |deviation| > 1e-4
  std::size_t evaluations = 0;
};

inline constexpr double kTable1FlagTol = 1e-4;

Table1Row reproduce_table1_row(int M, unsigned workers = 0);
std::vector<Table1Row> reproduce_table1(unsigned workers = 0);

} // namespace spinclone
