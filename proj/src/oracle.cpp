#include "nfold/oracle.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nfold::oracle {

namespace {

// Decode a flat rank into the box point with that lexicographic position;
// the first coordinate is the most significant digit.
Point unrank(const CombNFoldInstance& inst, i64 rank) {
  Point p(inst.lower.size());
  for (std::size_t v = p.size(); v-- > 0;) {
    i64 width = inst.upper[v] - inst.lower[v] + 1;
    p[v] = inst.lower[v] + rank % width;
    rank /= width;
  }
  return p;
}

// Odometer increment in lexicographic order; returns false past the end.
bool advance(const CombNFoldInstance& inst, Point& p) {
  for (std::size_t v = p.size(); v-- > 0;) {
    if (p[v] < inst.upper[v]) {
      ++p[v];
      for (std::size_t w = v + 1; w < p.size(); ++w) p[w] = inst.lower[w];
      return true;
    }
  }
  return false;
}

struct Best {
  bool found = false;
  i64 objective = 0;
  i64 rank = 0;
  Point point;
};

// Scan ranks [begin, end); the first strict improvement wins, which keeps
// the lexicographically least optimum because ranks are scanned in order.
Best scan_range(const CombNFoldInstance& inst, i64 begin, i64 end) {
  Best best;
  if (begin >= end) return best;
  Point p = unrank(inst, begin);
  for (i64 rank = begin; rank < end; ++rank) {
    if (is_feasible(inst, p)) {
      i64 obj = evaluate_objective(inst, p);
      if (!best.found || obj < best.objective) {
        best.found = true;
        best.objective = obj;
        best.rank = rank;
        best.point = p;
      }
    }
    if (rank + 1 < end) advance(inst, p);
  }
  return best;
}

SolveReport report_from(Best best) {
  SolveReport rep;
  if (!best.found) {
    rep.status = SolveStatus::Infeasible;
    return rep;
  }
  rep.status = SolveStatus::Optimal;
  rep.point = std::move(best.point);
  rep.objective_value = best.objective;
  return rep;
}

i64 checked_volume(const CombNFoldInstance& inst, i64 cap) {
  i64 volume;
  try {
    volume = box_volume(inst);
  } catch (const overflow_error&) {
    throw cap_error("instance too large for oracle");
  }
  if (volume > cap) throw cap_error("instance too large for oracle");
  return volume;
}

}  // namespace

i64 box_volume(const CombNFoldInstance& inst) {
  i64 volume = 1;
  for (std::size_t v = 0; v < inst.lower.size(); ++v)
    volume = checked_mul(volume, checked_add(checked_sub(inst.upper[v], inst.lower[v]), 1));
  return volume;
}

SolveReport brute_force_solve_serial(const CombNFoldInstance& inst, i64 cap) {
  const i64 volume = checked_volume(inst, cap);
  return report_from(scan_range(inst, 0, volume));
}

SolveReport brute_force_solve(const CombNFoldInstance& inst, i64 cap) {
  const i64 volume = checked_volume(inst, cap);
#ifdef _OPENMP
  const int max_threads = omp_get_max_threads();
#else
  const int max_threads = 1;
#endif
  const i64 chunks = std::min<i64>(std::max(max_threads, 1), std::max<i64>(volume, 1));
  std::vector<Best> partial(static_cast<std::size_t>(chunks));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (i64 c = 0; c < chunks; ++c) {
    i64 begin = volume / chunks * c + std::min(c, volume % chunks);
    i64 end = begin + volume / chunks + (c < volume % chunks ? 1 : 0);
    partial[static_cast<std::size_t>(c)] = scan_range(inst, begin, end);
  }
  // Merge by objective, then by rank: identical to the serial scan order.
  Best best;
  for (auto& b : partial) {
    if (!b.found) continue;
    if (!best.found || b.objective < best.objective ||
        (b.objective == best.objective && b.rank < best.rank))
      best = std::move(b);
  }
  return report_from(std::move(best));
}

SolveReport brute_force_solve(const RelationalInstance& rel, i64 cap) {
  if (rel.all_equalities()) return brute_force_solve(rel.base, cap);
  auto [inst, map] = equalize(rel);
  SolveReport rep = brute_force_solve(inst, cap);
  if (rep.point) rep.point = map.pull_back(*rep.point);
  return rep;
}

std::vector<std::vector<i64>> graver_of_ones(i64 t) {
  if (t < 2) throw std::invalid_argument("graver_of_ones: t must be >= 2");
  std::vector<std::vector<i64>> out;
  out.reserve(static_cast<std::size_t>(t * (t - 1)));
  for (i64 a = 0; a < t; ++a)
    for (i64 b = 0; b < t; ++b) {
      if (a == b) continue;
      std::vector<i64> g(static_cast<std::size_t>(t), 0);
      g[static_cast<std::size_t>(a)] = 1;
      g[static_cast<std::size_t>(b)] = -1;
      out.push_back(std::move(g));
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool conformal_leq(const std::vector<i64>& y, const std::vector<i64>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] > 0 && (x[i] < y[i])) return false;
    if (y[i] < 0 && (x[i] > y[i])) return false;
  }
  return true;
}

std::vector<std::vector<i64>> graver_brute_force(const std::vector<std::vector<i64>>& matrix,
                                                 i64 radius) {
  if (matrix.empty() || matrix.front().empty())
    throw std::invalid_argument("graver_brute_force: empty matrix");
  if (radius < 1) throw std::invalid_argument("graver_brute_force: radius must be >= 1");
  const i64 dim = static_cast<i64>(matrix.front().size());
  i64 states = 1;
  for (i64 v = 0; v < dim; ++v) {
    states = checked_mul(states, 2 * radius + 1);
    if (states > 50'000'000) throw cap_error("graver_brute_force: enumeration too large");
  }

  std::vector<std::vector<i64>> kernel;
  std::vector<i64> vec(static_cast<std::size_t>(dim), -radius);
  for (bool more = true; more;) {
    bool zero = std::all_of(vec.begin(), vec.end(), [](i64 v) { return v == 0; });
    if (!zero) {
      bool in_kernel = true;
      for (const auto& row : matrix) {
        i64 sum = 0;
        for (std::size_t i = 0; i < row.size(); ++i)
          sum = checked_add(sum, checked_mul(row[i], vec[i]));
        if (sum != 0) {
          in_kernel = false;
          break;
        }
      }
      if (in_kernel) kernel.push_back(vec);
    }
    more = false;
    for (std::size_t v = vec.size(); v-- > 0;) {
      if (vec[v] < radius) {
        ++vec[v];
        std::fill(vec.begin() + static_cast<std::ptrdiff_t>(v) + 1, vec.end(), -radius);
        more = true;
        break;
      }
    }
  }

  std::vector<std::vector<i64>> minimal;
  for (const auto& x : kernel) {
    bool is_min = true;
    for (const auto& y : kernel) {
      if (&x == &y) continue;
      if (conformal_leq(y, x)) {
        is_min = false;
        break;
      }
    }
    if (is_min) minimal.push_back(x);
  }
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

}  // namespace nfold::oracle
