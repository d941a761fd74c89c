// SPDX-License-Identifier: Apache-2.0
#include "spinclone/optimizer.hpp"

#include "spinclone/cloning.hpp"
#include "spinclone/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

namespace spinclone {

namespace {

double rank_value(double F) {
  return std::isnan(F) ? -std::numeric_limits<double>::infinity() : F;
}

void check_range(const Range& r, const char* name) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi)
    throw DomainError(std::string("SearchBox: invalid ") + name + " range");
}

} // namespace

bool better(const Candidate& a, const Candidate& b) {
  const double fa = rank_value(a.F), fb = rank_value(b.F);
  if (fa != fb) return fa > fb;
  if (a.t != b.t) return a.t < b.t;
  if (a.B != b.B) return a.B < b.B;
  if (a.k != b.k) return a.k < b.k;
  return a.lambda < b.lambda;
}

void SearchBox::validate() const {
  check_range(B, "B");
  check_range(t, "t");
  check_range(lambda, "lambda");
  if (n_B < 2 || n_t < 2) throw DomainError("SearchBox: grid counts must be >= 2");
  if (n_lambda < 1 || (n_lambda == 1 && lambda.lo != lambda.hi))
    throw DomainError("SearchBox: a lambda range needs n_lambda >= 2");
  if (k_candidates.empty()) throw DomainError("SearchBox: empty k candidate set");
  if (!(refine_tol > 0.0)) throw DomainError("SearchBox: refine_tol must be > 0");
  if (refine_iters < 0) throw DomainError("SearchBox: refine_iters must be >= 0");
}

SearchBox SearchBox::xx_table(int M) {
  SearchBox box;
  box.B = {0.01, 1.0};
  box.t = {0.0, 300.0};
  box.lambda = {0.0, 0.0};
  box.n_B = 201;
  box.n_t = 30001;
  box.n_lambda = 1;
  box.k_candidates.clear();
  for (int k = 0; k <= M; ++k) box.k_candidates.push_back(k);
  return box;
}

unsigned default_workers() {
  if (const char* env = std::getenv("SPINCLONE_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

OptResult grid_scan(const Objective& objective, const SearchBox& box, unsigned workers) {
  box.validate();
  if (workers == 0) workers = default_workers();

  const auto nk = box.k_candidates.size();
  std::vector<double> t_pts(box.n_t), B_pts(box.n_B), l_pts(box.n_lambda);
  for (int i = 0; i < box.n_t; ++i) t_pts[i] = box.t.point(i, box.n_t);
  for (int i = 0; i < box.n_B; ++i) B_pts[i] = box.B.point(i, box.n_B);
  for (int i = 0; i < box.n_lambda; ++i) l_pts[i] = box.lambda.point(i, box.n_lambda);

  // One row = fixed (k, lambda, B), all t. Rows are split into contiguous
  // chunks; the reduction uses a total order, so chunking cannot change it.
  const std::size_t rows_per_k = std::size_t(box.n_lambda) * box.n_B;
  const std::size_t n_rows = nk * rows_per_k;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_rows));

  const Candidate empty{0, 0.0, 0.0, 0.0, std::numeric_limits<double>::quiet_NaN()};
  std::vector<std::vector<Candidate>> partial(workers, std::vector<Candidate>(nk, empty));

  auto work = [&](unsigned w) {
    const std::size_t first = n_rows * w / workers;
    const std::size_t last = n_rows * (w + 1) / workers;
    auto& best = partial[w];
    for (std::size_t row = first; row < last; ++row) {
      const std::size_t ki = row / rows_per_k;
      const std::size_t rest = row % rows_per_k;
      const double lam = l_pts[rest / box.n_B];
      const double B = B_pts[rest % box.n_B];
      const int k = box.k_candidates[ki];
      for (double t : t_pts) {
        const Candidate c{k, lam, B, t, objective(k, lam, B, t)};
        if (better(c, best[ki])) best[ki] = c;
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  OptResult res;
  res.per_k.assign(nk, empty);
  for (const auto& part : partial)
    for (std::size_t ki = 0; ki < nk; ++ki)
      if (better(part[ki], res.per_k[ki])) res.per_k[ki] = part[ki];

  res.evaluations = n_rows * box.n_t;
  res.best = res.per_k.front();
  for (const auto& c : res.per_k)
    if (better(c, res.best)) res.best = c;

  double second = -std::numeric_limits<double>::infinity();
  for (const auto& c : res.per_k)
    if (c.k != res.best.k) second = std::max(second, rank_value(c.F));
  res.runner_up_gap = std::isfinite(second) ? res.best.F - second : 0.0;
  return res;
}

RefineResult refine_local(const Objective& objective, const Candidate& start,
                          const SearchBox& box) {
  box.validate();
  RefineResult out;

  auto eval = [&](double B, double t) {
    Candidate c = start;
    c.B = box.B.clip(B);
    c.t = box.t.clip(t);
    c.F = objective(c.k, c.lambda, c.B, c.t);
    ++out.evaluations;
    return c;
  };

  const double hB = box.B.width() / (box.n_B - 1);
  const double ht = box.t.width() / (box.n_t - 1);
  const Candidate s = eval(start.B, start.t);
  const double b_off = s.B + hB <= box.B.hi ? hB : -hB;
  const double t_off = s.t + ht <= box.t.hi ? ht : -ht;

  std::array<Candidate, 3> v{s, eval(s.B + b_off, s.t), eval(s.B, s.t + t_off)};
  auto order = [&] { std::sort(v.begin(), v.end(), better); };
  order();

  auto spread = [&] {
    double d = 0.0;
    for (int i = 1; i < 3; ++i)
      d = std::max({d, std::abs(v[i].B - v[0].B), std::abs(v[i].t - v[0].t)});
    return d;
  };

  while (out.iterations < box.refine_iters && spread() >= box.refine_tol) {
    ++out.iterations;
    const double cB = 0.5 * (v[0].B + v[1].B);
    const double ct = 0.5 * (v[0].t + v[1].t);
    auto along = [&](double step) {
      return eval(cB + step * (cB - v[2].B), ct + step * (ct - v[2].t));
    };

    const Candidate r = along(1.0);
    bool shrink = false;
    if (better(r, v[0])) {
      const Candidate e = along(2.0);
      v[2] = better(e, r) ? e : r;
    } else if (better(r, v[1])) {
      v[2] = r;
    } else if (better(r, v[2])) {
      const Candidate oc = along(0.5);
      if (!better(r, oc)) v[2] = oc;
      else shrink = true;
    } else {
      const Candidate ic = along(-0.5);
      if (better(ic, v[2])) v[2] = ic;
      else shrink = true;
    }
    if (shrink) {
      for (int i = 1; i < 3; ++i)
        v[i] = eval(v[0].B + 0.5 * (v[i].B - v[0].B), v[0].t + 0.5 * (v[i].t - v[0].t));
    }
    order();
    out.history.push_back(v[0].F);
  }
  out.best = v[0];
  return out;
}

OptResult optimize(const Objective& objective, const SearchBox& box, unsigned workers) {
  OptResult res = grid_scan(objective, box, workers);
  for (auto& c : res.per_k) {
    const RefineResult r = refine_local(objective, c, box);
    res.evaluations += r.evaluations;
    c = r.best;
  }
  res.best = res.per_k.front();
  for (const auto& c : res.per_k)
    if (better(c, res.best)) res.best = c;
  double second = -std::numeric_limits<double>::infinity();
  for (const auto& c : res.per_k)
    if (c.k != res.best.k) second = std::max(second, rank_value(c.F));
  res.runner_up_gap = std::isfinite(second) ? res.best.F - second : 0.0;
  res.refined = true;
  return res;
}

std::span<const ReferenceXXMaximum> reference_xx_maxima() {
  static constexpr std::array<ReferenceXXMaximum, 7> rows{{
      {2, 0.853553, 0.853553, 3.33216, 0.471405, 0},
      {3, 0.833333, 0.833319, 252.113, 0.0311526, 1},
      {4, 0.806186, 0.806131, 108.375, 0.0144940, 1},
      {5, 0.8, 0.799642, 27.7507, 0.0566038, 2},
      {6, 0.788675, 0.788510, 286.127, 0.0274493, 2},
      {7, 0.785714, 0.785617, 37.3064, 0.0421053, 3},
      {8, 0.779508, 0.779244, 20.7232, 0.0757989, 3},
  }};
  return rows;
}

Table1Row reproduce_table1_row(int M, unsigned workers) {
  const auto refs = reference_xx_maxima();
  const auto it = std::find_if(refs.begin(), refs.end(),
                               [M](const ReferenceXXMaximum& r) { return r.M == M; });
  if (it == refs.end())
    throw DomainError("reproduce_table1_row: no reference row for M=" + std::to_string(M));

  const Objective xx = [M](int k, double, double B, double t) {
    return xx_fidelity(M, k, B, t);
  };
  const OptResult res = optimize(xx, SearchBox::xx_table(M), workers);

  Table1Row row;
  row.M = M;
  row.F_optimal = optimal_pcc_bound(M);
  row.found = res.best;
  row.reference = *it;
  row.reference_F_eval = xx_fidelity(M, it->k, it->B, it->t);
  row.deviation = res.best.F - it->F_max;
  row.flagged = std::abs(row.deviation) > kTable1FlagTol;
  row.evaluations = res.evaluations;
  return row;
}

std::vector<Table1Row> reproduce_table1(unsigned workers) {
  std::vector<Table1Row> rows;
  for (const auto& ref : reference_xx_maxima()) rows.push_back(reproduce_table1_row(ref.M, workers));
  return rows;
}

} // namespace spinclone
