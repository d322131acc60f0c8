#include "nfold/instance.hpp"

#include <algorithm>
#include <limits>

namespace nfold {

i64 UnivariateTerm::eval(i64 x) const {
  switch (kind_) {
    case Kind::Zero:
      return 0;
    case Kind::Linear:
      return checked_mul(coeff_, x);
    case Kind::Custom:
      return fn_(x);
    case Kind::Pwl:
      break;
  }
  if (points_.empty()) throw eval_error("pwl term has no breakpoints");
  if (x < points_.front().x || x > points_.back().x)
    throw eval_error("pwl term evaluated outside breakpoint span");
  // Rightmost breakpoint with abscissa <= x, then walk the segment.
  auto it = std::upper_bound(points_.begin(), points_.end(), x,
                             [](i64 v, const PwlPoint& p) { return v < p.x; });
  const PwlPoint& a = *(it - 1);
  if (a.x == x) return a.y;
  const PwlPoint& b = *it;
  i64 slope = (b.y - a.y) / (b.x - a.x);  // integral by validation
  return checked_add(a.y, checked_mul(slope, checked_sub(x, a.x)));
}

std::vector<std::string> UnivariateTerm::check(i64 lo, i64 hi) const {
  std::vector<std::string> out;
  if (kind_ != Kind::Pwl) return out;
  if (points_.empty()) {
    out.push_back("pwl term has no breakpoints");
    return out;
  }
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i].x <= points_[i - 1].x) {
      out.push_back("pwl breakpoint abscissae not strictly increasing");
      return out;
    }
  }
  for (std::size_t i = 1; i < points_.size(); ++i) {
    i64 dx = points_[i].x - points_[i - 1].x;
    i64 dy = checked_sub(points_[i].y, points_[i - 1].y);
    if (dy % dx != 0) out.push_back("pwl segment slope is not integral");
  }
  // Convexity: slopes non-decreasing, compared in cross-multiplied form so
  // nothing is rounded.
  for (std::size_t i = 2; i < points_.size(); ++i) {
    i64 dx1 = points_[i - 1].x - points_[i - 2].x;
    i64 dy1 = checked_sub(points_[i - 1].y, points_[i - 2].y);
    i64 dx2 = points_[i].x - points_[i - 1].x;
    i64 dy2 = checked_sub(points_[i].y, points_[i - 1].y);
    if (checked_mul(dy1, dx2) > checked_mul(dy2, dx1)) {
      out.push_back("pwl term is not convex");
      break;
    }
  }
  if (points_.front().x > lo || points_.back().x < hi)
    out.push_back("pwl breakpoint span does not cover the variable box");
  return out;
}

ValidationResult validate_instance(const CombNFoldInstance& inst) {
  ValidationResult res;
  auto add = [&res](const std::string& s) { res.violations.push_back(s); };

  if (inst.bimatrix.d.empty()) {
    add("bimatrix must have at least one row");
    return res;
  }
  const i64 t = inst.bimatrix.cols();
  if (t < 1) add("bimatrix must have at least one column");
  for (const auto& row : inst.bimatrix.d)
    if (static_cast<i64>(row.size()) != t) {
      add("bimatrix rows have unequal widths");
      return res;
    }
  for (const auto& row : inst.bimatrix.d)
    for (i64 v : row)
      if (v == std::numeric_limits<i64>::min()) add("bimatrix entry magnitude not representable");
  if (inst.n < 1) add("brick count must be at least 1");
  if (static_cast<i64>(inst.b0.size()) != inst.r()) add("RHS length mismatch: b0 vs r");
  if (static_cast<i64>(inst.b_local.size()) != inst.n) add("RHS length mismatch: b_local vs n");

  const i64 dim = inst.n * t;
  if (static_cast<i64>(inst.lower.size()) != dim) add("bound length mismatch: lower vs n*t");
  if (static_cast<i64>(inst.upper.size()) != dim) add("bound length mismatch: upper vs n*t");
  if (static_cast<i64>(inst.objective.terms.size()) != dim)
    add("objective length mismatch: terms vs n*t");
  if (!res.ok()) return res;

  for (i64 v = 0; v < dim; ++v) {
    if (inst.lower[v] > inst.upper[v]) {
      add("lower exceeds upper at variable " + std::to_string(v));
      break;
    }
  }
  for (i64 v = 0; v < dim; ++v) {
    for (const auto& s : inst.objective.terms[v].check(inst.lower[v], inst.upper[v]))
      add("term " + std::to_string(v) + ": " + s);
  }
  return res;
}

i64 evaluate_objective(const CombNFoldInstance& inst, const Point& p) {
  if (static_cast<i64>(p.size()) != inst.dim())
    throw eval_error("point dimension does not match instance");
  i64 sum = 0;
  for (std::size_t v = 0; v < p.size(); ++v)
    sum = checked_add(sum, inst.objective.terms[v].eval(p[v]));
  return sum;
}

bool is_feasible(const CombNFoldInstance& inst, const Point& p) {
  if (static_cast<i64>(p.size()) != inst.dim()) return false;
  const i64 t = inst.t();
  for (std::size_t v = 0; v < p.size(); ++v)
    if (p[v] < inst.lower[v] || p[v] > inst.upper[v]) return false;
  for (i64 i = 0; i < inst.n; ++i) {
    i64 sum = 0;
    for (i64 j = 0; j < t; ++j) sum = checked_add(sum, p[inst.flat(i, j)]);
    if (sum != inst.b_local[static_cast<std::size_t>(i)]) return false;
  }
  for (i64 row = 0; row < inst.r(); ++row) {
    i64 sum = 0;
    const auto& drow = inst.bimatrix.d[static_cast<std::size_t>(row)];
    for (i64 i = 0; i < inst.n; ++i)
      for (i64 j = 0; j < t; ++j)
        sum = checked_add(sum, checked_mul(drow[static_cast<std::size_t>(j)], p[inst.flat(i, j)]));
    if (sum != inst.b0[static_cast<std::size_t>(row)]) return false;
  }
  return true;
}

}  // namespace nfold
