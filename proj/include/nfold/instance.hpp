#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "nfold/ints.hpp"
#include "nfold/objective.hpp"

namespace nfold {

// The repeated upper block D of the constraint matrix. The lower block is
// always a single all-ones row per brick and is never stored.
struct Bimatrix {
  std::vector<std::vector<i64>> d;  // r rows of width t

  i64 rows() const { return static_cast<i64>(d.size()); }
  i64 cols() const { return d.empty() ? 0 : static_cast<i64>(d.front().size()); }

  i64 max_abs() const {
    i64 m = 0;
    for (const auto& row : d)
      for (i64 v : row) m = std::max(m, checked_abs(v));
    return m;
  }

  // 1 + max |entry|.
  i64 delta() const { return checked_add(1, max_abs()); }

  bool operator==(const Bimatrix& o) const { return d == o.d; }
};

// min f(x)  s.t.  sum_i D x^i = b0,  1'x^i = b_local[i],  lower <= x <= upper.
//
// Variables are stored brick-major: (brick i, position j) lives at flat
// index i*t + j, 0-based on both coordinates.
struct CombNFoldInstance {
  Bimatrix bimatrix;
  i64 n = 0;
  std::vector<i64> b0;       // length r
  std::vector<i64> b_local;  // length n, one scalar per brick
  std::vector<i64> lower;    // length n*t
  std::vector<i64> upper;    // length n*t
  SeparableObjective objective;

  i64 t() const { return bimatrix.cols(); }
  i64 r() const { return bimatrix.rows(); }
  i64 dim() const { return n * t(); }
  std::size_t flat(i64 brick, i64 pos) const { return static_cast<std::size_t>(brick * t() + pos); }

  bool operator==(const CombNFoldInstance& o) const = default;
};

using Point = std::vector<i64>;

struct ValidationResult {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

enum class SolveStatus { Optimal, Infeasible, Error };

struct TraceEntry {
  i64 iteration;
  i64 alpha;
  i64 drop;  // objective decrease of this step, always > 0
};

struct SolveReport {
  SolveStatus status = SolveStatus::Error;
  std::optional<Point> point;
  std::optional<i64> objective_value;
  std::vector<TraceEntry> trace;
  bool heuristic = false;  // set when optimality was not certified (heuristic radius)
  std::string error;       // populated when status == Error
};

// Checks all type invariants and mutual dimension consistency. Violations
// are returned as data; nothing throws here.
ValidationResult validate_instance(const CombNFoldInstance& inst);

// Exact integer objective value. Throws overflow_error on wraparound and
// eval_error when a term is evaluated outside its domain.
i64 evaluate_objective(const CombNFoldInstance& inst, const Point& p);

// True iff p satisfies the global rows, every brick row and the box.
bool is_feasible(const CombNFoldInstance& inst, const Point& p);

}  // namespace nfold
