#include "nfold/transform.hpp"

#include <algorithm>
#include <limits>

namespace nfold {

namespace {

bool holds(Rel rel, i64 lhs, i64 rhs) {
  switch (rel) {
    case Rel::Lt: return lhs < rhs;
    case Rel::Le: return lhs <= rhs;
    case Rel::Eq: return lhs == rhs;
    case Rel::Ge: return lhs >= rhs;
    case Rel::Gt: return lhs > rhs;
  }
  return false;
}

VariableMap identity_map(const CombNFoldInstance& inst) {
  VariableMap m;
  m.target_t = inst.t();
  m.forward.resize(static_cast<std::size_t>(inst.dim()));
  for (std::size_t v = 0; v < m.forward.size(); ++v) m.forward[v] = v;
  m.target_is_dummy.assign(m.forward.size(), false);
  return m;
}

// sum over the full RHS of the input, used as the slack magnitude of the
// global gadget.
i64 rhs_inf_norm(const CombNFoldInstance& inst) {
  i64 m = 0;
  for (i64 v : inst.b0) m = std::max(m, checked_abs(v));
  for (i64 v : inst.b_local) m = std::max(m, checked_abs(v));
  return m;
}

// Internal pass versions keep the relation vectors so the two gadgets can
// be chained in either direction.

RelationalInstance equalize_local_pass(const RelationalInstance& rel, VariableMap& map) {
  const CombNFoldInstance& src = rel.base;
  const i64 t = src.t();
  const i64 nt1 = t + 1;

  CombNFoldInstance dst;
  dst.n = src.n;
  dst.bimatrix.d.reserve(src.bimatrix.d.size());
  for (const auto& row : src.bimatrix.d) {
    auto wide = row;
    wide.push_back(0);
    dst.bimatrix.d.push_back(std::move(wide));
  }
  dst.b0 = src.b0;
  dst.b_local = src.b_local;
  const i64 dim = dst.n * nt1;
  dst.lower.assign(static_cast<std::size_t>(dim), 0);
  dst.upper.assign(static_cast<std::size_t>(dim), 0);
  dst.objective = SeparableObjective::zeros(static_cast<std::size_t>(dim));

  map.target_t = nt1;
  map.forward.resize(static_cast<std::size_t>(src.dim()));
  map.target_is_dummy.assign(static_cast<std::size_t>(dim), false);

  for (i64 i = 0; i < src.n; ++i) {
    for (i64 j = 0; j < t; ++j) {
      const std::size_t s = src.flat(i, j);
      const std::size_t d = dst.flat(i, j);
      dst.lower[d] = src.lower[s];
      dst.upper[d] = src.upper[s];
      dst.objective.terms[d] = src.objective.terms[s];
      map.forward[s] = d;
    }
    const std::size_t slack = dst.flat(i, t);
    const i64 b = src.b_local[static_cast<std::size_t>(i)];
    switch (rel.local_rel[static_cast<std::size_t>(i)]) {
      case Rel::Le:
        dst.lower[slack] = 0;
        dst.upper[slack] = b;
        break;
      case Rel::Ge:
        dst.lower[slack] = checked_neg(b);
        dst.upper[slack] = 0;
        break;
      case Rel::Eq:
        break;  // pinned to zero
      case Rel::Lt:
      case Rel::Gt:
        throw std::invalid_argument("strict local relations are not supported");
    }
  }

  RelationalInstance out;
  out.base = std::move(dst);
  out.global_rel = rel.global_rel;
  out.local_rel.assign(static_cast<std::size_t>(src.n), Rel::Eq);
  return out;
}

RelationalInstance equalize_global_pass(const RelationalInstance& rel, VariableMap& map) {
  const CombNFoldInstance& src = rel.base;
  const i64 t = src.t();
  const i64 r = src.r();
  // One slack column per global row plus one absorber column whose matrix
  // column is zero; the absorber soaks up whatever part of the slack budget
  // the row slacks do not use, so the extra brick's equality row never
  // constrains the original variables.
  const i64 nt1 = t + r + 1;
  const i64 slack_mag = rhs_inf_norm(src);

  CombNFoldInstance dst;
  dst.n = src.n + 1;
  dst.bimatrix.d.assign(static_cast<std::size_t>(r),
                        std::vector<i64>(static_cast<std::size_t>(nt1), 0));
  for (i64 row = 0; row < r; ++row) {
    for (i64 j = 0; j < t; ++j)
      dst.bimatrix.d[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] =
          src.bimatrix.d[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)];
    dst.bimatrix.d[static_cast<std::size_t>(row)][static_cast<std::size_t>(t + row)] = 1;
  }
  dst.b0 = src.b0;
  const i64 dim = dst.n * nt1;
  dst.lower.assign(static_cast<std::size_t>(dim), 0);
  dst.upper.assign(static_cast<std::size_t>(dim), 0);
  dst.objective = SeparableObjective::zeros(static_cast<std::size_t>(dim));

  map.target_t = nt1;
  map.forward.resize(static_cast<std::size_t>(src.dim()));
  map.target_is_dummy.assign(static_cast<std::size_t>(dim), false);

  for (i64 i = 0; i < src.n; ++i)
    for (i64 j = 0; j < t; ++j) {
      const std::size_t s = src.flat(i, j);
      const std::size_t d = dst.flat(i, j);
      dst.lower[d] = src.lower[s];
      dst.upper[d] = src.upper[s];
      dst.objective.terms[d] = src.objective.terms[s];
      map.forward[s] = d;
    }

  i64 budget_hi = 0, budget_lo = 0;
  for (i64 row = 0; row < r; ++row) {
    const std::size_t slack = dst.flat(src.n, t + row);
    switch (rel.global_rel[static_cast<std::size_t>(row)]) {
      case Rel::Lt:
        dst.b0[static_cast<std::size_t>(row)] =
            checked_sub(dst.b0[static_cast<std::size_t>(row)], 1);
        [[fallthrough]];
      case Rel::Le:
        dst.lower[slack] = 0;
        dst.upper[slack] = slack_mag;
        budget_hi = checked_add(budget_hi, slack_mag);
        break;
      case Rel::Gt:
        dst.b0[static_cast<std::size_t>(row)] =
            checked_add(dst.b0[static_cast<std::size_t>(row)], 1);
        [[fallthrough]];
      case Rel::Ge:
        dst.lower[slack] = checked_neg(slack_mag);
        dst.upper[slack] = 0;
        budget_lo = checked_sub(budget_lo, slack_mag);
        break;
      case Rel::Eq:
        break;  // pinned
    }
  }
  {
    const std::size_t z = dst.flat(src.n, nt1 - 1);
    dst.lower[z] = 0;
    dst.upper[z] = checked_sub(budget_hi, budget_lo);
  }
  dst.b_local = src.b_local;
  dst.b_local.push_back(budget_hi);

  RelationalInstance out;
  out.base = std::move(dst);
  out.global_rel.assign(static_cast<std::size_t>(r), Rel::Eq);
  out.local_rel = rel.local_rel;
  out.local_rel.push_back(Rel::Eq);
  return out;
}

}  // namespace

bool is_feasible(const RelationalInstance& rel, const Point& p) {
  const CombNFoldInstance& inst = rel.base;
  if (static_cast<i64>(p.size()) != inst.dim()) return false;
  const i64 t = inst.t();
  for (std::size_t v = 0; v < p.size(); ++v)
    if (p[v] < inst.lower[v] || p[v] > inst.upper[v]) return false;
  for (i64 i = 0; i < inst.n; ++i) {
    i64 sum = 0;
    for (i64 j = 0; j < t; ++j) sum = checked_add(sum, p[inst.flat(i, j)]);
    if (!holds(rel.local_rel[static_cast<std::size_t>(i)], sum,
               inst.b_local[static_cast<std::size_t>(i)]))
      return false;
  }
  for (i64 row = 0; row < inst.r(); ++row) {
    i64 sum = 0;
    const auto& drow = inst.bimatrix.d[static_cast<std::size_t>(row)];
    for (i64 i = 0; i < inst.n; ++i)
      for (i64 j = 0; j < t; ++j)
        sum = checked_add(sum,
                          checked_mul(drow[static_cast<std::size_t>(j)], p[inst.flat(i, j)]));
    if (!holds(rel.global_rel[static_cast<std::size_t>(row)], sum,
               inst.b0[static_cast<std::size_t>(row)]))
      return false;
  }
  return true;
}

std::pair<CombNFoldInstance, VariableMap> equalize_local(const RelationalInstance& rel) {
  for (Rel g : rel.global_rel)
    if (g != Rel::Eq)
      throw std::invalid_argument("equalize_local: global relations must be equalities");
  VariableMap map;
  RelationalInstance out = equalize_local_pass(rel, map);
  return {std::move(out.base), std::move(map)};
}

std::pair<CombNFoldInstance, VariableMap> equalize_global(const RelationalInstance& rel) {
  for (Rel l : rel.local_rel)
    if (l != Rel::Eq)
      throw std::invalid_argument("equalize_global: local relations must be equalities");
  VariableMap map;
  RelationalInstance out = equalize_global_pass(rel, map);
  return {std::move(out.base), std::move(map)};
}

std::pair<CombNFoldInstance, VariableMap> equalize(const RelationalInstance& rel) {
  bool local_eq = std::all_of(rel.local_rel.begin(), rel.local_rel.end(),
                              [](Rel x) { return x == Rel::Eq; });
  bool global_eq = std::all_of(rel.global_rel.begin(), rel.global_rel.end(),
                               [](Rel x) { return x == Rel::Eq; });
  if (local_eq && global_eq) {
    VariableMap map = identity_map(rel.base);
    return {rel.base, std::move(map)};
  }
  if (global_eq) return equalize_local(rel);
  if (local_eq) return equalize_global(rel);
  // Global pass first: it leaves the local relations untouched and its new
  // brick arrives with an equality row, so a single local pass finishes.
  VariableMap gmap;
  RelationalInstance mid = equalize_global_pass(rel, gmap);
  VariableMap lmap;
  RelationalInstance out = equalize_local_pass(mid, lmap);
  return {std::move(out.base), gmap.then(lmap)};
}

std::pair<RelationalInstance, VariableMap> lift_pre_nfold(const PreNFoldInstance& pre) {
  const i64 T = pre.block_count();
  if (T < 1) throw std::invalid_argument("lift_pre_nfold: at least one block required");
  const i64 r = static_cast<i64>(pre.blocks.front().size());
  const i64 t = pre.total_width();

  CombNFoldInstance dst;
  dst.n = T;
  dst.bimatrix.d.assign(static_cast<std::size_t>(r), {});
  for (i64 row = 0; row < r; ++row) {
    auto& drow = dst.bimatrix.d[static_cast<std::size_t>(row)];
    drow.reserve(static_cast<std::size_t>(t));
    for (const auto& block : pre.blocks) {
      if (static_cast<i64>(block.size()) != r)
        throw std::invalid_argument("lift_pre_nfold: blocks disagree on row count");
      const auto& brow = block[static_cast<std::size_t>(row)];
      drow.insert(drow.end(), brow.begin(), brow.end());
    }
  }
  dst.b0 = pre.b0;
  dst.b_local = pre.b_local;
  const i64 dim = T * t;
  dst.lower.assign(static_cast<std::size_t>(dim), 0);
  dst.upper.assign(static_cast<std::size_t>(dim), 0);
  dst.objective = SeparableObjective::zeros(static_cast<std::size_t>(dim));

  VariableMap map;
  map.target_t = t;
  map.forward.resize(pre.lower.size());
  map.target_is_dummy.assign(static_cast<std::size_t>(dim), true);

  std::size_t src = 0;
  i64 offset = 0;
  for (i64 tau = 0; tau < T; ++tau) {
    const i64 width = static_cast<i64>(pre.blocks[static_cast<std::size_t>(tau)].front().size());
    for (i64 j = 0; j < width; ++j, ++src) {
      const std::size_t d = dst.flat(tau, offset + j);
      dst.lower[d] = pre.lower[src];
      dst.upper[d] = pre.upper[src];
      dst.objective.terms[d] = pre.objective.terms[src];
      map.forward[src] = d;
      map.target_is_dummy[d] = false;
    }
    offset += width;
  }

  RelationalInstance out;
  out.base = std::move(dst);
  out.global_rel = pre.global_rel;
  out.local_rel = pre.local_rel;
  return {std::move(out), std::move(map)};
}

CombNFoldInstance tighten_box(const CombNFoldInstance& inst,
                              const std::vector<Rational>& fractional_opt, i64 g) {
  if (static_cast<i64>(fractional_opt.size()) != inst.dim())
    throw std::invalid_argument("tighten_box: fractional point has wrong dimension");
  i64 radius;
  bool saturated = false;
  try {
    radius = checked_mul(checked_mul(inst.n, inst.t()), g);
  } catch (const overflow_error&) {
    saturated = true;  // radius exceeds any representable box: nothing to do
    radius = 0;
  }
  CombNFoldInstance out = inst;
  if (saturated) return out;
  for (std::size_t v = 0; v < fractional_opt.size(); ++v) {
    i64 lo, hi;
    try {
      lo = checked_sub(fractional_opt[v].floor(), radius);
    } catch (const overflow_error&) {
      lo = std::numeric_limits<i64>::min();
    }
    try {
      hi = checked_add(fractional_opt[v].ceil(), radius);
    } catch (const overflow_error&) {
      hi = std::numeric_limits<i64>::max();
    }
    out.lower[v] = std::max(out.lower[v], lo);
    out.upper[v] = std::min(out.upper[v], hi);
  }
  return out;
}

}  // namespace nfold
