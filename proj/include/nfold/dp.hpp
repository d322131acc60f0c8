#pragma once

#include <optional>
#include <vector>

#include "nfold/instance.hpp"

namespace nfold {

// A direction found by the augmentation-graph search together with its
// weight f(x + alpha*h) - f(x). Weight 0 with the zero direction means no
// improving step of this length exists.
struct BestStep {
  std::vector<i64> direction;
  i64 weight;
};

// Upper bound (2g+1)^2 * (1 + 4*delta*g)^r on the number of states per
// layer of the augmentation graph; used for memory pre-checks before exact
// mode commits to a search radius. Throws overflow_error when the bound
// does not fit in 64 bits.
i64 dp_layer_size_bound(i64 t, i64 r, i64 delta, i64 g);

// Lightest source-to-sink path in the augmentation graph of (x, alpha),
// restricted to directions whose coordinates and brick prefix sums lie in
// [-g, g] and whose signature entries lie in [-2*delta*g, 2*delta*g].
//
// Returns the minimum-weight direction even when its weight is
// non-negative; the caller decides whether to step. Absent only when no
// source-to-sink path exists, which cannot happen for feasible x (the zero
// direction is always representable).
std::optional<BestStep> find_best_step(const CombNFoldInstance& inst, const Point& x, i64 alpha,
                                       i64 g);

}  // namespace nfold
