#pragma once

#include <optional>

#include "nfold/dp.hpp"
#include "nfold/transform.hpp"

namespace nfold {

enum class AlphaStrategy { FullSweep, PowersOfTwoThenRefine };

struct SolverConfig {
  enum class Mode { Exact, Heuristic };

  Mode mode = Mode::Exact;
  // Heuristic search radius. Unset means automatic: the radius is derived
  // from the box so that every box-feasible Graver element stays
  // representable, which keeps the search complete on bounded instances.
  std::optional<i64> heuristic_radius;
  std::optional<i64> max_iterations;
  AlphaStrategy alpha_strategy = AlphaStrategy::FullSweep;
  bool trace_enabled = true;
  bool parallel = true;  // sweep step lengths with OpenMP; serial path kept for tests

  static SolverConfig exact() { return SolverConfig{}; }
  static SolverConfig heuristic(std::optional<i64> radius = std::nullopt) {
    SolverConfig cfg;
    cfg.mode = Mode::Heuristic;
    cfg.heuristic_radius = radius;
    return cfg;
  }
};

// t^2 * (2 r delta)^r with delta = 1 + max |D entry|. Throws overflow_error
// with "g(E) bound exceeds integer range" when it does not fit; callers must
// then fall back to heuristic mode.
i64 graver_complexity_bound(const Bimatrix& bm);

// The radius the augmentation search will use for this instance and
// configuration. In exact mode this is the Graver complexity bound capped
// by ceil(n*t*||u-l||_inf / 2): a box-feasible Graver element decomposes
// into at most half its l1 norm many one-up/one-down vectors, so the capped
// radius still covers all of them. Exact mode throws bound_error when the
// complexity bound or the layer-size pre-check overflows.
i64 search_radius(const CombNFoldInstance& inst, const SolverConfig& cfg);

struct StepPair {
  i64 alpha = 0;
  std::vector<i64> direction;
  i64 weight = 0;  // f(x + alpha*direction) - f(x), negative for augmenting steps
};

// Sweeps step lengths in [1, min(n*t*g, ||u-l||_inf)] and returns the pair
// with the most negative weight, or absent when no step length yields an
// improvement. With PowersOfTwoThenRefine only powers of two are swept and
// the best direction's length is then tuned by convex search; since length 1
// is always swept, "absent" still certifies that no improving pair exists.
std::optional<StepPair> graver_best_step(const CombNFoldInstance& inst, const Point& x,
                                         const SolverConfig& cfg);

// Augments from x0 until no improving step remains. The objective strictly
// decreases every iteration.
SolveReport optimize(const CombNFoldInstance& inst, const Point& x0, const SolverConfig& cfg);

// Finds a feasible point or decides none exists: capacity pre-check, per
// brick greedy fill, then an auxiliary slack-brick program whose optimum is
// zero exactly when the instance is feasible.
std::optional<Point> find_initial_feasible(const CombNFoldInstance& inst,
                                           const SolverConfig& cfg = {});

// Full pipeline: optional box tightening when a relaxation oracle is
// plugged, then feasibility, then augmentation.
SolveReport solve(const CombNFoldInstance& inst, const SolverConfig& cfg = {},
                  const RelaxationOracle* relaxation = nullptr);

// Equalizes the relations and solves; the reported point is projected back
// onto the source variables.
SolveReport solve(const RelationalInstance& rel, const SolverConfig& cfg = {},
                  const RelaxationOracle* relaxation = nullptr);

}  // namespace nfold
