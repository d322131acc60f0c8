#include "nfold/solver.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nfold {

namespace {

i64 box_width(const CombNFoldInstance& inst) {
  i64 w = 0;
  for (std::size_t v = 0; v < inst.upper.size(); ++v)
    w = std::max(w, checked_sub(inst.upper[v], inst.lower[v]));
  return w;
}

// Saturating n*t*W/2 rounded up, at least 1.
i64 box_radius(const CombNFoldInstance& inst) {
  try {
    i64 half = ceil_div(checked_mul(checked_mul(inst.n, inst.t()), box_width(inst)), 2);
    return std::max<i64>(half, 1);
  } catch (const overflow_error&) {
    return std::numeric_limits<i64>::max();
  }
}

std::vector<i64> candidate_alphas(i64 alpha_max, AlphaStrategy strategy) {
  std::vector<i64> alphas;
  if (alpha_max < 1) return alphas;
  if (strategy == AlphaStrategy::FullSweep) {
    alphas.reserve(static_cast<std::size_t>(alpha_max));
    for (i64 a = 1; a <= alpha_max; ++a) alphas.push_back(a);
  } else {
    for (i64 a = 1; a <= alpha_max && a > 0; a *= 2) alphas.push_back(a);
    if (alphas.back() != alpha_max) alphas.push_back(alpha_max);
  }
  return alphas;
}

// Largest step length keeping x + alpha*h inside the box; h is a kernel
// direction already feasible for alpha = 1.
i64 max_feasible_alpha(const CombNFoldInstance& inst, const Point& x, const std::vector<i64>& h,
                       i64 cap) {
  i64 best = cap;
  for (std::size_t v = 0; v < h.size(); ++v) {
    if (h[v] > 0)
      best = std::min(best, floor_div(checked_sub(inst.upper[v], x[v]), h[v]));
    else if (h[v] < 0)
      best = std::min(best, floor_div(checked_sub(x[v], inst.lower[v]), -h[v]));
  }
  return best;
}

i64 objective_at_step(const CombNFoldInstance& inst, const Point& x, const std::vector<i64>& h,
                      i64 alpha) {
  i64 sum = 0;
  for (std::size_t v = 0; v < h.size(); ++v)
    sum = checked_add(sum, inst.objective.terms[v].eval(
                               checked_add(x[v], checked_mul(alpha, h[v]))));
  return sum;
}

// Integer minimizer of the convex function alpha -> f(x + alpha*h) over
// [lo, hi] by ternary search.
i64 refine_alpha(const CombNFoldInstance& inst, const Point& x, const std::vector<i64>& h, i64 lo,
                 i64 hi) {
  while (hi - lo > 2) {
    i64 m1 = lo + (hi - lo) / 3;
    i64 m2 = hi - (hi - lo) / 3;
    if (objective_at_step(inst, x, h, m1) <= objective_at_step(inst, x, h, m2))
      hi = m2 - 1;
    else
      lo = m1 + 1;
  }
  i64 best = lo;
  i64 best_val = objective_at_step(inst, x, h, lo);
  for (i64 a = lo + 1; a <= hi; ++a) {
    i64 val = objective_at_step(inst, x, h, a);
    if (val < best_val) {
      best_val = val;
      best = a;
    }
  }
  return best;
}

}  // namespace

i64 graver_complexity_bound(const Bimatrix& bm) {
  const i64 t = bm.cols();
  const i64 r = bm.rows();
  try {
    return checked_mul(checked_mul(t, t), checked_pow(checked_mul(2, checked_mul(r, bm.delta())), r));
  } catch (const overflow_error&) {
    throw overflow_error("g(E) bound exceeds integer range");
  }
}

i64 search_radius(const CombNFoldInstance& inst, const SolverConfig& cfg) {
  if (cfg.mode == SolverConfig::Mode::Heuristic) {
    if (cfg.heuristic_radius) {
      if (*cfg.heuristic_radius < 1)
        throw std::invalid_argument("heuristic radius must be >= 1");
      return *cfg.heuristic_radius;
    }
    i64 g = box_radius(inst);
    try {
      g = std::min(g, graver_complexity_bound(inst.bimatrix));
    } catch (const overflow_error&) {
      // complexity bound unavailable; the box radius alone stays sound
    }
    return g;
  }
  i64 complexity;
  try {
    complexity = graver_complexity_bound(inst.bimatrix);
  } catch (const overflow_error& e) {
    throw bound_error(e.what());
  }
  i64 g = std::min(complexity, box_radius(inst));
  try {
    dp_layer_size_bound(inst.t(), inst.r(), inst.bimatrix.delta(), g);
  } catch (const overflow_error&) {
    throw bound_error("bound too large");
  }
  return g;
}

std::optional<StepPair> graver_best_step(const CombNFoldInstance& inst, const Point& x,
                                         const SolverConfig& cfg) {
  const i64 g = search_radius(inst, cfg);
  const i64 width = box_width(inst);
  i64 alpha_max;
  try {
    alpha_max = std::min(checked_mul(checked_mul(inst.n, inst.t()), g), width);
  } catch (const overflow_error&) {
    alpha_max = width;
  }
  if (alpha_max < 1) return std::nullopt;  // degenerate box: no nonzero step at any length

  const std::vector<i64> alphas = candidate_alphas(alpha_max, cfg.alpha_strategy);
  std::vector<std::optional<BestStep>> results(alphas.size());

  if (cfg.parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t a = 0; a < alphas.size(); ++a)
      results[a] = find_best_step(inst, x, alphas[a], g);
  } else {
    for (std::size_t a = 0; a < alphas.size(); ++a)
      results[a] = find_best_step(inst, x, alphas[a], g);
  }

  // Deterministic reduction: most negative weight, smallest alpha on ties.
  int best = -1;
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    if (!results[a]) continue;
    if (best < 0 || results[a]->weight < results[static_cast<std::size_t>(best)]->weight)
      best = static_cast<int>(a);
  }
  if (best < 0 || results[static_cast<std::size_t>(best)]->weight >= 0) return std::nullopt;

  StepPair pair;
  pair.alpha = alphas[static_cast<std::size_t>(best)];
  pair.direction = std::move(results[static_cast<std::size_t>(best)]->direction);
  pair.weight = results[static_cast<std::size_t>(best)]->weight;

  if (cfg.alpha_strategy == AlphaStrategy::PowersOfTwoThenRefine) {
    i64 hi = max_feasible_alpha(inst, x, pair.direction, alpha_max);
    if (hi > 1) {
      i64 base = objective_at_step(inst, x, pair.direction, 0);
      i64 alpha = refine_alpha(inst, x, pair.direction, 1, hi);
      i64 weight = checked_sub(objective_at_step(inst, x, pair.direction, alpha), base);
      if (weight < pair.weight) {
        pair.alpha = alpha;
        pair.weight = weight;
      }
    }
  }
  return pair;
}

SolveReport optimize(const CombNFoldInstance& inst, const Point& x0, const SolverConfig& cfg) {
  SolveReport rep;
  rep.heuristic = cfg.mode == SolverConfig::Mode::Heuristic;
  Point x = x0;
  i64 f_curr = evaluate_objective(inst, x);
  i64 iteration = 0;
  for (;;) {
    auto step = graver_best_step(inst, x, cfg);
    if (!step) break;
    if (cfg.max_iterations && iteration >= *cfg.max_iterations) {
      rep.status = SolveStatus::Error;
      rep.error = "iteration limit reached before local optimality";
      rep.point = std::move(x);
      rep.objective_value = f_curr;
      return rep;
    }
    ++iteration;
    for (std::size_t v = 0; v < x.size(); ++v)
      x[v] = checked_add(x[v], checked_mul(step->alpha, step->direction[v]));
    i64 f_next = evaluate_objective(inst, x);
    assert(f_next - f_curr == step->weight);
    i64 drop = checked_sub(f_curr, f_next);
    assert(drop > 0);
    if (cfg.trace_enabled) rep.trace.push_back(TraceEntry{iteration, step->alpha, drop});
    f_curr = f_next;
  }
  rep.status = SolveStatus::Optimal;
  rep.point = std::move(x);
  rep.objective_value = f_curr;
  return rep;
}

std::optional<Point> find_initial_feasible(const CombNFoldInstance& inst,
                                           const SolverConfig& cfg) {
  const i64 t = inst.t();
  const i64 r = inst.r();

  // Capacity pre-check and greedy per-brick fill.
  Point x(inst.lower);
  for (i64 i = 0; i < inst.n; ++i) {
    i64 lo_sum = 0, hi_sum = 0;
    for (i64 j = 0; j < t; ++j) {
      lo_sum = checked_add(lo_sum, inst.lower[inst.flat(i, j)]);
      hi_sum = checked_add(hi_sum, inst.upper[inst.flat(i, j)]);
    }
    const i64 b = inst.b_local[static_cast<std::size_t>(i)];
    if (b < lo_sum || b > hi_sum) return std::nullopt;
    i64 need = checked_sub(b, lo_sum);
    for (i64 j = 0; j < t && need > 0; ++j) {
      const std::size_t v = inst.flat(i, j);
      i64 room = checked_sub(inst.upper[v], inst.lower[v]);
      i64 add = std::min(room, need);
      x[v] = checked_add(x[v], add);
      need -= add;
    }
  }

  std::vector<i64> rho(static_cast<std::size_t>(r));
  bool satisfied = true;
  for (i64 row = 0; row < r; ++row) {
    i64 sum = 0;
    for (i64 i = 0; i < inst.n; ++i)
      for (i64 j = 0; j < t; ++j)
        sum = checked_add(sum, checked_mul(inst.bimatrix.d[static_cast<std::size_t>(row)]
                                                          [static_cast<std::size_t>(j)],
                                           x[inst.flat(i, j)]));
    rho[static_cast<std::size_t>(row)] = checked_sub(inst.b0[static_cast<std::size_t>(row)], sum);
    if (rho[static_cast<std::size_t>(row)] != 0) satisfied = false;
  }
  if (satisfied) return x;

  // Auxiliary program over width t + 2r + 1: the original columns, one
  // positive and one negative slack column per global row, and one absorber
  // column outside the global rows. The slack columns are pinned to zero in
  // the original bricks; a dedicated extra brick carries them, with local
  // budget sum |rho| and initial point p = max(rho, 0), q = max(-rho, 0),
  // z = 0. Its optimum is zero exactly when the instance is feasible.
  i64 budget = 0;
  for (i64 row = 0; row < r; ++row)
    budget = checked_add(budget, checked_abs(rho[static_cast<std::size_t>(row)]));

  const i64 aux_t = t + 2 * r + 1;
  CombNFoldInstance aux;
  aux.n = inst.n + 1;
  aux.bimatrix.d.assign(static_cast<std::size_t>(r), std::vector<i64>(static_cast<std::size_t>(aux_t), 0));
  for (i64 row = 0; row < r; ++row) {
    auto& drow = aux.bimatrix.d[static_cast<std::size_t>(row)];
    for (i64 j = 0; j < t; ++j) drow[static_cast<std::size_t>(j)] = inst.bimatrix.d[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)];
    drow[static_cast<std::size_t>(t + row)] = 1;
    drow[static_cast<std::size_t>(t + r + row)] = -1;
  }
  aux.b0 = inst.b0;
  aux.b_local = inst.b_local;
  aux.b_local.push_back(budget);
  const i64 aux_dim = aux.n * aux_t;
  aux.lower.assign(static_cast<std::size_t>(aux_dim), 0);
  aux.upper.assign(static_cast<std::size_t>(aux_dim), 0);
  aux.objective = SeparableObjective::zeros(static_cast<std::size_t>(aux_dim));
  Point start(static_cast<std::size_t>(aux_dim), 0);
  for (i64 i = 0; i < inst.n; ++i) {
    for (i64 j = 0; j < t; ++j) {
      const std::size_t src = inst.flat(i, j);
      const std::size_t dst = aux.flat(i, j);
      aux.lower[dst] = inst.lower[src];
      aux.upper[dst] = inst.upper[src];
      start[dst] = x[src];
    }
  }
  for (i64 row = 0; row < 2 * r; ++row) {
    const std::size_t v = aux.flat(inst.n, t + row);
    aux.lower[v] = 0;
    aux.upper[v] = budget;
    aux.objective.terms[v] = UnivariateTerm::linear(1);
  }
  {
    const std::size_t z = aux.flat(inst.n, aux_t - 1);
    aux.lower[z] = 0;
    aux.upper[z] = budget;
  }
  for (i64 row = 0; row < r; ++row) {
    i64 v = rho[static_cast<std::size_t>(row)];
    start[aux.flat(inst.n, t + row)] = std::max<i64>(v, 0);
    start[aux.flat(inst.n, t + r + row)] = std::max<i64>(-v, 0);
  }
  assert(is_feasible(aux, start));

  SolveReport phase1 = optimize(aux, start, cfg);
  if (phase1.status != SolveStatus::Optimal || *phase1.objective_value != 0) return std::nullopt;

  Point out(static_cast<std::size_t>(inst.dim()));
  for (i64 i = 0; i < inst.n; ++i)
    for (i64 j = 0; j < t; ++j) out[inst.flat(i, j)] = (*phase1.point)[aux.flat(i, j)];
  assert(is_feasible(inst, out));
  return out;
}

SolveReport solve(const CombNFoldInstance& inst, const SolverConfig& cfg,
                  const RelaxationOracle* relaxation) {
  const CombNFoldInstance* target = &inst;
  CombNFoldInstance tightened;
  if (relaxation) {
    if (auto frac = relaxation->relax(inst)) {
      tightened = tighten_box(inst, *frac, search_radius(inst, cfg));
      target = &tightened;
    }
  }
  auto x0 = find_initial_feasible(*target, cfg);
  if (!x0) {
    SolveReport rep;
    rep.status = SolveStatus::Infeasible;
    rep.heuristic = cfg.mode == SolverConfig::Mode::Heuristic;
    return rep;
  }
  return optimize(*target, *x0, cfg);
}

SolveReport solve(const RelationalInstance& rel, const SolverConfig& cfg,
                  const RelaxationOracle* relaxation) {
  auto [inst, vmap] = equalize(rel);
  SolveReport rep = solve(inst, cfg, relaxation);
  if (rep.point) rep.point = vmap.pull_back(*rep.point);
  return rep;
}

}  // namespace nfold
