#pragma once

#include <vector>

#include "nfold/instance.hpp"
#include "nfold/transform.hpp"

namespace nfold::oracle {

inline constexpr i64 kDefaultVolumeCap = 10'000'000;

// Box volume of the instance; throws cap_error when it does not fit in 64
// bits (then it certainly exceeds any sensible cap).
i64 box_volume(const CombNFoldInstance& inst);

// Enumerates every integer point of the box in lexicographic order, filters
// by feasibility and returns the minimum-objective point (lexicographically
// least among ties) or Infeasible. Partitions the box across OpenMP threads.
SolveReport brute_force_solve(const CombNFoldInstance& inst, i64 cap = kDefaultVolumeCap);

// Plain single-loop reference used to validate the partitioned kernel.
SolveReport brute_force_solve_serial(const CombNFoldInstance& inst, i64 cap = kDefaultVolumeCap);

// Relational instances are rewritten to equality form first, so one
// feasibility predicate serves everything; the reported point is projected
// back onto the source variables.
SolveReport brute_force_solve(const RelationalInstance& rel, i64 cap = kDefaultVolumeCap);

// The t(t-1) vectors with one +1, one -1 and zeros elsewhere: the Graver
// basis of a single all-ones row. Sorted lexicographically.
std::vector<std::vector<i64>> graver_of_ones(i64 t);

// Sign-minimal nonzero kernel vectors of the matrix within the given
// coordinate radius. Equals the Graver basis whenever the radius covers
// every basis element; fixtures must pick radii certified by the
// complexity bound. Output sorted lexicographically.
std::vector<std::vector<i64>> graver_brute_force(const std::vector<std::vector<i64>>& matrix,
                                                 i64 radius);

// y is sign-compatible with x and coordinate-wise dominated by it.
bool conformal_leq(const std::vector<i64>& y, const std::vector<i64>& x);

}  // namespace nfold::oracle
