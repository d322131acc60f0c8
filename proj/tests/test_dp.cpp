#include <doctest.h>

#include <optional>
#include <random>

#include "support.hpp"

using namespace nfold;
using testutil::instance_A;
using testutil::make_instance;

namespace {

// Enumerates every kernel direction h with x + alpha*h in the box and
// returns the minimum objective delta; independent of the layered search.
std::optional<i64> min_step_weight_by_enumeration(const CombNFoldInstance& inst, const Point& x,
                                                  i64 alpha) {
  const i64 dim = inst.dim();
  std::vector<i64> lo(static_cast<std::size_t>(dim)), hi(static_cast<std::size_t>(dim));
  for (i64 v = 0; v < dim; ++v) {
    lo[static_cast<std::size_t>(v)] = ceil_div(inst.lower[static_cast<std::size_t>(v)] - x[static_cast<std::size_t>(v)], alpha);
    hi[static_cast<std::size_t>(v)] = floor_div(inst.upper[static_cast<std::size_t>(v)] - x[static_cast<std::size_t>(v)], alpha);
    if (lo[static_cast<std::size_t>(v)] > hi[static_cast<std::size_t>(v)]) return std::nullopt;
  }
  std::optional<i64> best;
  std::vector<i64> h = lo;
  const i64 base = evaluate_objective(inst, x);
  for (bool more = true; more;) {
    bool kernel = true;
    for (i64 i = 0; i < inst.n && kernel; ++i) {
      i64 sum = 0;
      for (i64 j = 0; j < inst.t(); ++j) sum += h[inst.flat(i, j)];
      kernel = sum == 0;
    }
    for (i64 row = 0; row < inst.r() && kernel; ++row) {
      i64 sum = 0;
      for (i64 i = 0; i < inst.n; ++i)
        for (i64 j = 0; j < inst.t(); ++j)
          sum += inst.bimatrix.d[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] *
                 h[inst.flat(i, j)];
      kernel = sum == 0;
    }
    if (kernel) {
      Point y = x;
      for (i64 v = 0; v < dim; ++v) y[static_cast<std::size_t>(v)] += alpha * h[static_cast<std::size_t>(v)];
      i64 w = evaluate_objective(inst, y) - base;
      if (!best || w < *best) best = w;
    }
    more = false;
    for (std::size_t v = h.size(); v-- > 0;) {
      if (h[v] < hi[v]) {
        ++h[v];
        for (std::size_t w = v + 1; w < h.size(); ++w) h[w] = lo[w];
        more = true;
        break;
      }
    }
  }
  return best;
}

i64 covering_radius(const CombNFoldInstance& inst) {
  i64 width = 0;
  for (std::size_t v = 0; v < inst.upper.size(); ++v)
    width = std::max(width, inst.upper[v] - inst.lower[v]);
  return std::max<i64>(1, inst.n * inst.t() * width);
}

}  // namespace

TEST_CASE("layer size bound formula") {
  CHECK(dp_layer_size_bound(2, 1, 1, 1) == 45);
  CHECK(dp_layer_size_bound(2, 1, 1, 2) == 225);
  CHECK(dp_layer_size_bound(2, 1, 2, 16) == 140481);
  CHECK_THROWS_AS(dp_layer_size_bound(4, 3, 1'000'000, 1'000'000'000), overflow_error);
}

TEST_CASE("degenerate box forces the zero direction") {
  auto inst = make_instance(1, {{1, 0}}, {1}, {1}, {1, 0}, {1, 0}, SeparableObjective::zeros(2));
  Point x{1, 0};
  auto step = find_best_step(inst, x, 1, 4);
  REQUIRE(step.has_value());
  CHECK(step->weight == 0);
  CHECK(step->direction == std::vector<i64>{0, 0});
}

TEST_CASE("already optimal point yields weight zero") {
  auto inst = instance_A({0, 1, 1, 0});
  Point x{1, 0, 0, 1};
  REQUIRE(is_feasible(inst, x));
  auto step = find_best_step(inst, x, 1, 16);
  REQUIRE(step.has_value());
  CHECK(step->weight == 0);
  CHECK(step->weight == min_step_weight_by_enumeration(inst, x, 1));
}

TEST_CASE("improving direction found and confirmed by enumeration") {
  auto inst = instance_A({0, 1, 1, 0});
  Point x{0, 1, 0, 1};
  REQUIRE(is_feasible(inst, x));
  auto expected = min_step_weight_by_enumeration(inst, x, 1);
  REQUIRE(expected.has_value());
  CHECK(*expected == -1);
  auto step = find_best_step(inst, x, 1, 16);
  REQUIRE(step.has_value());
  CHECK(step->weight == -1);
}

TEST_CASE("search equals enumeration at every step length on random fixtures") {
  std::mt19937_64 rng(101);
  int checked = 0;
  while (checked < 25) {
    auto inst = testutil::random_instance(rng);
    auto rep = oracle::brute_force_solve(inst);
    if (rep.status != SolveStatus::Optimal) continue;
    // Random feasible start: walk the enumeration and keep one.
    auto x0 = find_initial_feasible(inst);
    if (!x0) continue;
    ++checked;
    const i64 g = covering_radius(inst);
    for (i64 alpha = 1; alpha <= 3; ++alpha) {
      auto expected = min_step_weight_by_enumeration(inst, *x0, alpha);
      auto step = find_best_step(inst, *x0, alpha, g);
      REQUIRE(step.has_value());
      REQUIRE(expected.has_value());
      CHECK(step->weight == *expected);
      // Soundness: kernel membership, box feasibility, weight consistency.
      Point y = *x0;
      for (std::size_t v = 0; v < y.size(); ++v) y[v] += alpha * step->direction[v];
      for (std::size_t v = 0; v < y.size(); ++v) {
        CHECK(y[v] >= inst.lower[v]);
        CHECK(y[v] <= inst.upper[v]);
      }
      for (i64 i = 0; i < inst.n; ++i) {
        i64 sum = 0;
        for (i64 j = 0; j < inst.t(); ++j) sum += step->direction[inst.flat(i, j)];
        CHECK(sum == 0);
      }
      for (i64 row = 0; row < inst.r(); ++row) {
        i64 sum = 0;
        for (i64 i = 0; i < inst.n; ++i)
          for (i64 j = 0; j < inst.t(); ++j)
            sum += inst.bimatrix.d[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] *
                   step->direction[inst.flat(i, j)];
        CHECK(sum == 0);
      }
      CHECK(evaluate_objective(inst, y) - evaluate_objective(inst, *x0) == step->weight);
    }
  }
}

TEST_CASE("weight dominates every feasible basis element") {
  // Fixed tiny fixtures; the brute-forced basis of the product matrix gives
  // the candidates a complete search must not lose to.
  std::vector<CombNFoldInstance> fixtures;
  fixtures.push_back(instance_A({0, 1, 1, 0}));
  fixtures.push_back(instance_A({2, 1, 1, 1}));
  fixtures.push_back(make_instance(2, {{1, 0}}, {1}, {1, 1}, {0, 0, 0, 0}, {1, 1, 1, 1},
                                   SeparableObjective::linear({1, 0, -1, 2})));
  fixtures.push_back(make_instance(2, {{1, -1}}, {0}, {0, 0}, {-1, -1, -1, -1}, {1, 1, 1, 1},
                                   SeparableObjective::linear({1, -2, 0, 1})));
  fixtures.push_back(make_instance(3, {{1, 1}}, {3}, {1, 1, 1}, std::vector<i64>(6, 0),
                                   std::vector<i64>(6, 1),
                                   SeparableObjective::linear({3, -1, 2, 0, -2, 1})));

  for (const auto& inst : fixtures) {
    const i64 t = inst.t();
    std::vector<std::vector<i64>> mat(static_cast<std::size_t>(inst.r() + inst.n),
                                      std::vector<i64>(static_cast<std::size_t>(inst.dim()), 0));
    for (i64 row = 0; row < inst.r(); ++row)
      for (i64 i = 0; i < inst.n; ++i)
        for (i64 j = 0; j < t; ++j)
          mat[static_cast<std::size_t>(row)][inst.flat(i, j)] =
              inst.bimatrix.d[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)];
    for (i64 i = 0; i < inst.n; ++i)
      for (i64 j = 0; j < t; ++j) mat[static_cast<std::size_t>(inst.r() + i)][inst.flat(i, j)] = 1;
    auto basis = oracle::graver_brute_force(mat, 2);

    i64 g_needed = 1;
    for (const auto& g : basis) {
      for (i64 v : g) g_needed = std::max(g_needed, v < 0 ? -v : v);
      for (i64 i = 0; i < inst.n; ++i) {
        i64 prefix = 0;
        for (i64 j = 0; j < t; ++j) {
          prefix += g[inst.flat(i, j)];
          g_needed = std::max(g_needed, prefix < 0 ? -prefix : prefix);
        }
      }
    }

    auto x0 = find_initial_feasible(inst);
    REQUIRE(x0.has_value());
    for (i64 alpha = 1; alpha <= 2; ++alpha) {
      auto step = find_best_step(inst, *x0, alpha, g_needed);
      REQUIRE(step.has_value());
      for (const auto& g : basis) {
        Point y = *x0;
        bool ok = true;
        for (std::size_t v = 0; v < y.size(); ++v) {
          y[v] += alpha * g[v];
          if (y[v] < inst.lower[v] || y[v] > inst.upper[v]) ok = false;
        }
        if (!ok) continue;
        CHECK(step->weight <= evaluate_objective(inst, y) - evaluate_objective(inst, *x0));
      }
    }
  }
}
