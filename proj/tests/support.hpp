#pragma once

// Test-only helpers: compact fixture builders, a seeded random corpus, and
// independent brute-force oracles for the application problems. These stay
// out of the library on purpose; they are the ground truth the library is
// checked against.

#include <random>
#include <string>
#include <vector>

#include "nfold/encoders.hpp"
#include "nfold/oracle.hpp"
#include "nfold/solver.hpp"

namespace testutil {

using namespace nfold;

inline CombNFoldInstance make_instance(i64 n, std::vector<std::vector<i64>> D, std::vector<i64> b0,
                                       std::vector<i64> b_local, std::vector<i64> lower,
                                       std::vector<i64> upper, SeparableObjective objective) {
  CombNFoldInstance inst;
  inst.n = n;
  inst.bimatrix.d = std::move(D);
  inst.b0 = std::move(b0);
  inst.b_local = std::move(b_local);
  inst.lower = std::move(lower);
  inst.upper = std::move(upper);
  inst.objective = std::move(objective);
  return inst;
}

// n=2 bricks of width 2, one global row summing everything to 2, each brick
// summing to 1, binary box. Feasible points: the four one-hot-per-brick
// combinations.
inline CombNFoldInstance instance_A(std::vector<i64> coeffs = {0, 0, 0, 0}) {
  return make_instance(2, {{1, 1}}, {2}, {1, 1}, {0, 0, 0, 0}, {1, 1, 1, 1},
                       SeparableObjective::linear(std::move(coeffs)));
}

struct CorpusParams {
  i64 max_n = 3;
  i64 max_t = 3;
  i64 max_r = 2;
  i64 coeff_mag = 1;   // |D| entries
  i64 box_width = 3;   // upper - lower per coordinate
  i64 obj_mag = 3;     // |linear coefficients|
  double feasible_bias = 0.7;
};

// Random instance; with probability feasible_bias the RHS comes from a
// random box point, so roughly that fraction of the corpus is feasible.
inline CombNFoldInstance random_instance(std::mt19937_64& rng, const CorpusParams& p = {}) {
  std::uniform_int_distribution<i64> dn(1, p.max_n), dt(1, p.max_t), dr(1, p.max_r);
  const i64 n = dn(rng), t = dt(rng), r = dr(rng);
  std::uniform_int_distribution<i64> dcoef(-p.coeff_mag, p.coeff_mag);
  std::uniform_int_distribution<i64> dobj(-p.obj_mag, p.obj_mag);
  std::uniform_int_distribution<i64> dlo(-2, 1), dwidth(0, p.box_width);

  CombNFoldInstance inst;
  inst.n = n;
  inst.bimatrix.d.assign(static_cast<std::size_t>(r), std::vector<i64>(static_cast<std::size_t>(t)));
  for (auto& row : inst.bimatrix.d)
    for (auto& v : row) v = dcoef(rng);
  const i64 dim = n * t;
  inst.lower.resize(static_cast<std::size_t>(dim));
  inst.upper.resize(static_cast<std::size_t>(dim));
  Point ref(static_cast<std::size_t>(dim));
  std::vector<i64> coeffs(static_cast<std::size_t>(dim));
  for (i64 v = 0; v < dim; ++v) {
    inst.lower[static_cast<std::size_t>(v)] = dlo(rng);
    inst.upper[static_cast<std::size_t>(v)] =
        inst.lower[static_cast<std::size_t>(v)] + dwidth(rng);
    ref[static_cast<std::size_t>(v)] = std::uniform_int_distribution<i64>(
        inst.lower[static_cast<std::size_t>(v)], inst.upper[static_cast<std::size_t>(v)])(rng);
    coeffs[static_cast<std::size_t>(v)] = dobj(rng);
  }
  inst.objective = SeparableObjective::linear(std::move(coeffs));

  const bool from_point = std::uniform_real_distribution<double>(0, 1)(rng) < p.feasible_bias;
  inst.b_local.resize(static_cast<std::size_t>(n));
  for (i64 i = 0; i < n; ++i) {
    i64 sum = 0;
    for (i64 j = 0; j < t; ++j) sum += ref[inst.flat(i, j)];
    inst.b_local[static_cast<std::size_t>(i)] =
        from_point ? sum : sum + std::uniform_int_distribution<i64>(-2, 2)(rng);
  }
  inst.b0.assign(static_cast<std::size_t>(r), 0);
  for (i64 row = 0; row < r; ++row) {
    i64 sum = 0;
    for (i64 i = 0; i < n; ++i)
      for (i64 j = 0; j < t; ++j)
        sum += inst.bimatrix.d[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] *
               ref[inst.flat(i, j)];
    inst.b0[static_cast<std::size_t>(row)] =
        from_point ? sum : sum + std::uniform_int_distribution<i64>(-1, 1)(rng);
  }
  return inst;
}

// Direct relational enumeration: rows checked under their own relation
// symbols, no gadget involved. Ground truth for the rewrite passes.
inline SolveReport relational_brute_force(const RelationalInstance& rel, i64 cap = 10'000'000) {
  const CombNFoldInstance& inst = rel.base;
  i64 volume = 1;
  for (std::size_t v = 0; v < inst.lower.size(); ++v)
    volume = checked_mul(volume, inst.upper[v] - inst.lower[v] + 1);
  if (volume > cap) throw cap_error("relational brute force: box too large");

  SolveReport rep;
  rep.status = SolveStatus::Infeasible;
  Point p = inst.lower;
  for (i64 it = 0; it < volume; ++it) {
    if (nfold::is_feasible(rel, p)) {
      i64 obj = evaluate_objective(inst, p);
      if (rep.status == SolveStatus::Infeasible || obj < *rep.objective_value) {
        rep.status = SolveStatus::Optimal;
        rep.objective_value = obj;
        rep.point = p;
      }
    }
    for (std::size_t v = p.size(); v-- > 0;) {
      if (p[v] < inst.upper[v]) {
        ++p[v];
        for (std::size_t w = v + 1; w < p.size(); ++w) p[w] = inst.lower[w];
        break;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Application-level ground truth.

struct StringBrute {
  bool feasible = false;
  i64 best_total = 0;
  std::string y;
};

// Exhaustive search over alphabet^L, columns expanded in type order.
inline StringBrute string_brute_force(const encoders::MultiStringsInstance& ms) {
  const i64 sigma = static_cast<i64>(ms.alphabet.size());
  std::vector<std::size_t> col_of_pos;
  for (std::size_t c = 0; c < ms.columns.size(); ++c)
    for (i64 m = 0; m < ms.columns[c].multiplicity; ++m) col_of_pos.push_back(c);
  const std::size_t L = col_of_pos.size();

  auto char_dist = [&](i64 f, char input) -> i64 {
    if (input == '*') return 0;
    return ms.dist[static_cast<std::size_t>(f)][ms.alphabet.find(input)];
  };

  StringBrute best;
  std::vector<i64> y(L, 0);
  for (;;) {
    std::vector<i64> dist(static_cast<std::size_t>(ms.k), 0);
    for (std::size_t pos = 0; pos < L; ++pos) {
      const auto& pat = ms.columns[col_of_pos[pos]].pattern;
      for (i64 i = 0; i < ms.k; ++i)
        dist[static_cast<std::size_t>(i)] += char_dist(y[pos], pat[static_cast<std::size_t>(i)]);
    }
    bool ok = true;
    i64 total = 0;
    for (i64 i = 0; i < ms.k; ++i) {
      if (dist[static_cast<std::size_t>(i)] < ms.d_lo[static_cast<std::size_t>(i)] ||
          dist[static_cast<std::size_t>(i)] > ms.d_hi[static_cast<std::size_t>(i)])
        ok = false;
      total += dist[static_cast<std::size_t>(i)];
    }
    if (ok) {
      i64 objective = ms.minimize_total ? total : 0;
      if (!best.feasible || objective < best.best_total) {
        best.feasible = true;
        best.best_total = objective;
        best.y.clear();
        for (i64 c : y) best.y.push_back(ms.alphabet[static_cast<std::size_t>(c)]);
      }
    }
    std::size_t pos = L;
    bool more = false;
    while (pos-- > 0) {
      if (y[pos] < sigma - 1) {
        ++y[pos];
        std::fill(y.begin() + static_cast<std::ptrdiff_t>(pos) + 1, y.end(), 0);
        more = true;
        break;
      }
    }
    if (!more) break;
  }
  return best;
}

struct RawStringBrute {
  bool feasible = false;
  i64 best_total = 0;
  std::string y;
};

// Exhaustive search directly over the source alphabet, no normalization:
// the ground truth for the whole string pipeline.
inline RawStringBrute raw_string_brute_force(const std::vector<std::string>& strings,
                                             const std::string& alphabet,
                                             const std::vector<i64>& d_lo,
                                             const std::vector<i64>& d_hi, bool minimize_total) {
  const std::size_t L = strings.front().size();
  const i64 sigma = static_cast<i64>(alphabet.size());
  RawStringBrute best;
  std::vector<i64> y(L, 0);
  for (;;) {
    bool ok = true;
    i64 total = 0;
    for (std::size_t i = 0; i < strings.size(); ++i) {
      i64 dist = 0;
      for (std::size_t pos = 0; pos < L; ++pos) {
        char c = strings[i][pos];
        if (c != '*' && c != alphabet[static_cast<std::size_t>(y[pos])]) ++dist;
      }
      if (dist < d_lo[i] || dist > d_hi[i]) ok = false;
      total += dist;
    }
    if (ok) {
      i64 objective = minimize_total ? total : 0;
      if (!best.feasible || objective < best.best_total) {
        best.feasible = true;
        best.best_total = objective;
        best.y.clear();
        for (i64 c : y) best.y.push_back(alphabet[static_cast<std::size_t>(c)]);
      }
    }
    std::size_t pos = L;
    bool more = false;
    while (pos-- > 0) {
      if (y[pos] < sigma - 1) {
        ++y[pos];
        std::fill(y.begin() + static_cast<std::ptrdiff_t>(pos) + 1, y.end(), 0);
        more = true;
        break;
      }
    }
    if (!more) break;
  }
  return best;
}

struct WsmBrute {
  bool feasible = false;
  i64 best_cost = 0;
};

inline WsmBrute wsm_brute_force(const encoders::WsmInstance& w) {
  std::vector<i64> supply;
  std::vector<std::vector<i64>> sorted;
  for (const auto& ty : w.types) {
    supply.push_back(static_cast<i64>(ty.weights.size()));
    auto s = ty.weights;
    std::sort(s.begin(), s.end());
    sorted.push_back(std::move(s));
  }
  WsmBrute best;
  std::vector<i64> counts(w.types.size(), 0);
  for (;;) {
    std::vector<i64> cover(static_cast<std::size_t>(w.k), 0);
    i64 cost = 0;
    for (std::size_t tau = 0; tau < counts.size(); ++tau) {
      for (i64 c = 0; c < counts[tau]; ++c) cost += sorted[tau][static_cast<std::size_t>(c)];
      for (i64 m : w.types[tau].members) cover[static_cast<std::size_t>(m)] += counts[tau];
    }
    bool ok = true;
    for (i64 j = 0; j < w.k; ++j)
      if (cover[static_cast<std::size_t>(j)] < w.demands[static_cast<std::size_t>(j)]) ok = false;
    if (ok && (!best.feasible || cost < best.best_cost)) {
      best.feasible = true;
      best.best_cost = cost;
    }
    std::size_t tau = counts.size();
    bool more = false;
    while (tau-- > 0) {
      if (counts[tau] < supply[tau]) {
        ++counts[tau];
        std::fill(counts.begin() + static_cast<std::ptrdiff_t>(tau) + 1, counts.end(), 0);
        more = true;
        break;
      }
    }
    if (!more) break;
  }
  return best;
}

struct BriberyBrute {
  bool feasible = false;
  i64 best_cost = 0;
};

// Every voter picks a target order; winner checked directly from the
// perturbed election.
inline BriberyBrute bribery_brute_force(const encoders::BriberyInstance& br, bool scoring_rule) {
  const i64 c = br.num_candidates;
  std::vector<std::vector<i64>> orders;
  {
    std::vector<i64> base(static_cast<std::size_t>(c));
    for (i64 i = 0; i < c; ++i) base[static_cast<std::size_t>(i)] = i;
    do {
      orders.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
  }
  struct Voter {
    std::size_t type;
  };
  std::vector<Voter> voters;
  for (std::size_t i = 0; i < br.voter_types.size(); ++i)
    for (i64 m = 0; m < br.voter_types[i].multiplicity; ++m) voters.push_back({i});

  auto move_cost = [&](const std::vector<i64>& src, const std::vector<i64>& dst,
                       const std::vector<std::vector<i64>>& sc) {
    std::vector<i64> ps(static_cast<std::size_t>(c)), pd(static_cast<std::size_t>(c));
    for (i64 p = 0; p < c; ++p) {
      ps[static_cast<std::size_t>(src[static_cast<std::size_t>(p)])] = p;
      pd[static_cast<std::size_t>(dst[static_cast<std::size_t>(p)])] = p;
    }
    i64 cost = 0;
    for (i64 a = 0; a < c; ++a)
      for (i64 b = 0; b < c; ++b)
        if (a != b && ps[static_cast<std::size_t>(a)] < ps[static_cast<std::size_t>(b)] &&
            pd[static_cast<std::size_t>(a)] > pd[static_cast<std::size_t>(b)])
          cost += sc[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    return cost;
  };

  BriberyBrute best;
  std::vector<std::size_t> choice(voters.size(), 0);
  for (;;) {
    i64 cost = 0;
    for (std::size_t v = 0; v < voters.size(); ++v) {
      const auto& vt = br.voter_types[voters[v].type];
      cost += move_cost(vt.order, orders[choice[v]], vt.swap_cost);
    }
    bool wins;
    if (scoring_rule) {
      std::vector<i64> score(static_cast<std::size_t>(c), 0);
      for (std::size_t v = 0; v < voters.size(); ++v)
        for (i64 p = 0; p < c; ++p)
          score[static_cast<std::size_t>(orders[choice[v]][static_cast<std::size_t>(p)])] +=
              br.scoring[static_cast<std::size_t>(p)];
      wins = score[0] == *std::max_element(score.begin(), score.end());
    } else {
      // Copeland^alpha from head-to-head tallies.
      std::vector<i64> points(static_cast<std::size_t>(c), 0);
      for (i64 a = 0; a < c; ++a)
        for (i64 b = a + 1; b < c; ++b) {
          i64 va = 0, vb = 0;
          for (std::size_t v = 0; v < voters.size(); ++v) {
            for (i64 p = 0; p < c; ++p) {
              i64 cand = orders[choice[v]][static_cast<std::size_t>(p)];
              if (cand == a) {
                ++va;
                break;
              }
              if (cand == b) {
                ++vb;
                break;
              }
            }
          }
          if (va > vb)
            points[static_cast<std::size_t>(a)] += br.copeland_den;
          else if (vb > va)
            points[static_cast<std::size_t>(b)] += br.copeland_den;
          else {
            points[static_cast<std::size_t>(a)] += br.copeland_num;
            points[static_cast<std::size_t>(b)] += br.copeland_num;
          }
        }
      wins = points[0] == *std::max_element(points.begin(), points.end());
    }
    if (wins && (!best.feasible || cost < best.best_cost)) {
      best.feasible = true;
      best.best_cost = cost;
    }
    std::size_t v = choice.size();
    bool more = false;
    while (v-- > 0) {
      if (choice[v] + 1 < orders.size()) {
        ++choice[v];
        std::fill(choice.begin() + static_cast<std::ptrdiff_t>(v) + 1, choice.end(), 0);
        more = true;
        break;
      }
    }
    if (!more) break;
  }
  return best;
}

// Standard-form expansion of a huge instance; brick order follows types.
// Requires the inner block to be a single all-ones row so the expansion is
// itself a combinatorial instance.
inline CombNFoldInstance expand_huge(const encoders::HugeNFoldInstance& h) {
  const i64 t = h.t();
  if (h.a.size() != 1) throw std::invalid_argument("expand_huge: need a single inner row");
  for (i64 v : h.a.front())
    if (v != 1) throw std::invalid_argument("expand_huge: inner row must be all ones");
  CombNFoldInstance inst;
  i64 n = 0;
  for (const auto& ty : h.types) n += ty.multiplicity;
  inst.n = n;
  inst.bimatrix.d = h.d;
  inst.b0 = h.b0;
  for (const auto& ty : h.types) {
    for (i64 m = 0; m < ty.multiplicity; ++m) {
      inst.b_local.push_back(ty.b_local.at(0));
      inst.lower.insert(inst.lower.end(), ty.lower.begin(), ty.lower.end());
      inst.upper.insert(inst.upper.end(), ty.upper.begin(), ty.upper.end());
      for (const auto& term : ty.objective) inst.objective.terms.push_back(term);
    }
  }
  (void)t;
  return inst;
}

struct HugeBrute {
  bool feasible = false;
  i64 best = 0;
};

// Direct enumeration over per-brick configurations of the expanded
// instance; handles s = 0 (no inner rows) and arbitrary inner blocks.
inline HugeBrute huge_brute_force(const encoders::HugeNFoldInstance& h) {
  const i64 t = h.t();
  std::vector<std::size_t> brick_type;
  for (std::size_t i = 0; i < h.types.size(); ++i)
    for (i64 m = 0; m < h.types[i].multiplicity; ++m) brick_type.push_back(i);

  // Configurations per type.
  std::vector<std::vector<std::vector<i64>>> cfgs(h.types.size());
  for (std::size_t i = 0; i < h.types.size(); ++i) {
    const auto& ty = h.types[i];
    std::vector<i64> cur = ty.lower;
    for (bool more = true; more;) {
      bool ok = true;
      for (std::size_t row = 0; row < h.a.size() && ok; ++row) {
        i64 sum = 0;
        for (i64 j = 0; j < t; ++j)
          sum += h.a[row][static_cast<std::size_t>(j)] * cur[static_cast<std::size_t>(j)];
        ok = sum == ty.b_local[row];
      }
      if (ok) cfgs[i].push_back(cur);
      more = false;
      for (std::size_t j = cur.size(); j-- > 0;) {
        if (cur[j] < ty.upper[j]) {
          ++cur[j];
          for (std::size_t w = j + 1; w < cur.size(); ++w) cur[w] = ty.lower[w];
          more = true;
          break;
        }
      }
    }
  }

  HugeBrute best;
  std::vector<std::size_t> choice(brick_type.size(), 0);
  for (const auto& bt : brick_type)
    if (cfgs[bt].empty()) return best;  // some brick has no admissible configuration
  for (;;) {
    std::vector<i64> lhs(h.b0.size(), 0);
    i64 objective = 0;
    for (std::size_t b = 0; b < brick_type.size(); ++b) {
      const auto& cfg = cfgs[brick_type[b]][choice[b]];
      for (std::size_t row = 0; row < h.b0.size(); ++row)
        for (i64 j = 0; j < t; ++j)
          lhs[row] += h.d[row][static_cast<std::size_t>(j)] * cfg[static_cast<std::size_t>(j)];
      for (i64 j = 0; j < t; ++j)
        objective += h.types[brick_type[b]].objective[static_cast<std::size_t>(j)].eval(
            cfg[static_cast<std::size_t>(j)]);
    }
    bool ok = true;
    for (std::size_t row = 0; row < h.b0.size(); ++row)
      if (lhs[row] != h.b0[row]) ok = false;
    if (ok && (!best.feasible || objective < best.best)) {
      best.feasible = true;
      best.best = objective;
    }
    std::size_t b = choice.size();
    bool more = false;
    while (b-- > 0) {
      if (choice[b] + 1 < cfgs[brick_type[b]].size()) {
        ++choice[b];
        std::fill(choice.begin() + static_cast<std::ptrdiff_t>(b) + 1, choice.end(), 0);
        more = true;
        break;
      }
    }
    if (!more) break;
  }
  return best;
}

}  // namespace testutil
