#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nfold/instance.hpp"

namespace nfold {

enum class Rel { Lt, Le, Eq, Ge, Gt };

// An instance whose rows may be inequalities: one relation per global row
// and one per brick row. All-Eq relations make it equivalent to the plain
// instance it wraps.
struct RelationalInstance {
  CombNFoldInstance base;
  std::vector<Rel> global_rel;  // length r
  std::vector<Rel> local_rel;   // length n

  static RelationalInstance equalities(CombNFoldInstance inst) {
    RelationalInstance rel;
    rel.global_rel.assign(static_cast<std::size_t>(inst.r()), Rel::Eq);
    rel.local_rel.assign(static_cast<std::size_t>(inst.n), Rel::Eq);
    rel.base = std::move(inst);
    return rel;
  }

  bool all_equalities() const {
    auto eq = [](Rel r) { return r == Rel::Eq; };
    return std::all_of(global_rel.begin(), global_rel.end(), eq) &&
           std::all_of(local_rel.begin(), local_rel.end(), eq);
  }

  bool operator==(const RelationalInstance& o) const = default;
};

// Direct relational feasibility: rows compared under their relation symbols.
bool is_feasible(const RelationalInstance& rel, const Point& p);

// Records how source variables map into a rewritten instance. Target
// variables outside the image are slack or dummy columns.
struct VariableMap {
  i64 target_t = 0;                   // brick width of the target
  std::vector<std::size_t> forward;   // source flat index -> target flat index
  std::vector<bool> target_is_dummy;  // pinned lower = upper = 0 dummies

  Point pull_back(const Point& target) const {
    Point src(forward.size());
    for (std::size_t v = 0; v < forward.size(); ++v) src[v] = target[forward[v]];
    return src;
  }

  // Composition: first `this`, then `next` on this map's target.
  VariableMap then(const VariableMap& next) const {
    VariableMap out;
    out.target_t = next.target_t;
    out.target_is_dummy = next.target_is_dummy;
    out.forward.reserve(forward.size());
    for (std::size_t f : forward) out.forward.push_back(next.forward[f]);
    return out;
  }
};

// Turns brick-row inequalities into equalities by appending one slack
// column per brick. Strict local relations are rejected. Global relations
// must already be equalities.
std::pair<CombNFoldInstance, VariableMap> equalize_local(const RelationalInstance& rel);

// Turns global-row inequalities into equalities by appending one slack
// column per global row plus one absorber column, all pinned to zero in the
// original bricks, and one extra brick carrying the slack budget. Local
// relations must already be equalities.
std::pair<CombNFoldInstance, VariableMap> equalize_global(const RelationalInstance& rel);

// Composition of the two passes; accepts any mix of relations.
std::pair<CombNFoldInstance, VariableMap> equalize(const RelationalInstance& rel);

// Block-diagonal program with unequal block widths and one all-ones row per
// block, lifted to the uniform-width format via dummy variables.
struct PreNFoldInstance {
  std::vector<std::vector<std::vector<i64>>> blocks;  // per block: r x t_block matrix
  std::vector<i64> b0;                                // length r
  std::vector<i64> b_local;                           // length T
  std::vector<i64> lower, upper;                      // block-major, total width sum(t_block)
  SeparableObjective objective;
  std::vector<Rel> global_rel;  // length r
  std::vector<Rel> local_rel;   // length T

  i64 block_count() const { return static_cast<i64>(blocks.size()); }
  i64 total_width() const {
    i64 w = 0;
    for (const auto& b : blocks) w += b.empty() ? 0 : static_cast<i64>(b.front().size());
    return w;
  }
};

std::pair<RelationalInstance, VariableMap> lift_pre_nfold(const PreNFoldInstance& pre);

struct Rational {
  i64 num = 0;
  i64 den = 1;  // > 0
  i64 floor() const { return floor_div(num, den); }
  i64 ceil() const { return ceil_div(num, den); }
};

// Optional plug-in producing a feasible optimizer of the continuous
// relaxation. No implementation ships; callers may provide one to enable
// proximity-based box tightening.
struct RelaxationOracle {
  virtual ~RelaxationOracle() = default;
  virtual std::optional<std::vector<Rational>> relax(const CombNFoldInstance& inst) const = 0;
};

// Shrinks the box around a fractional optimizer with radius n*t*g while
// provably keeping an integer optimum inside.
CombNFoldInstance tighten_box(const CombNFoldInstance& inst,
                              const std::vector<Rational>& fractional_opt, i64 g);

}  // namespace nfold
