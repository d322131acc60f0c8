#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace nfold;
using testutil::instance_A;
using testutil::make_instance;

TEST_CASE("complexity bound values") {
  Bimatrix a;
  a.d = {{1, 0}};
  CHECK(graver_complexity_bound(a) == 16);
  Bimatrix b;
  b.d = {{0, 0, 0}};
  CHECK(graver_complexity_bound(b) == 18);
  Bimatrix c;
  c.d = {{1, 0}, {0, 1}};
  CHECK(graver_complexity_bound(c) == 256);
  Bimatrix big;
  big.d.assign(3, std::vector<i64>(4, 1'000'000));
  CHECK_THROWS_AS(graver_complexity_bound(big), overflow_error);
}

TEST_CASE("exact mode refuses when the complexity bound overflows") {
  auto inst = make_instance(1, std::vector<std::vector<i64>>(3, std::vector<i64>(4, 1'000'000)),
                            {0, 0, 0}, {0}, std::vector<i64>(4, 0), std::vector<i64>(4, 1),
                            SeparableObjective::zeros(4));
  CHECK_THROWS_AS(search_radius(inst, SolverConfig::exact()), bound_error);
  CHECK_THROWS_AS(solve(inst, SolverConfig::exact()), bound_error);
  // The same instance passes in heuristic mode.
  auto rep = solve(inst, SolverConfig::heuristic(2));
  CHECK(rep.status != SolveStatus::Error);
}

TEST_CASE("best step sweep") {
  SUBCASE("degenerate box yields no step") {
    auto inst = make_instance(1, {{1, 0}}, {1}, {1}, {1, 0}, {1, 0}, SeparableObjective::zeros(2));
    CHECK_FALSE(graver_best_step(inst, {1, 0}, SolverConfig::exact()).has_value());
  }
  SUBCASE("improving step is found") {
    auto inst = instance_A({2, 1, 1, 1});
    Point x{1, 0, 1, 0};  // objective 3, optimum 2
    auto step = graver_best_step(inst, x, SolverConfig::exact());
    REQUIRE(step.has_value());
    CHECK(step->weight == -1);
    CHECK(step->alpha >= 1);
  }
  SUBCASE("oracle-optimal point yields no step") {
    auto inst = instance_A({2, 1, 1, 1});
    auto best = oracle::brute_force_solve(inst);
    REQUIRE(best.status == SolveStatus::Optimal);
    CHECK_FALSE(graver_best_step(inst, *best.point, SolverConfig::exact()).has_value());
  }
}

TEST_CASE("augmentation loop") {
  SUBCASE("fixed point returns immediately") {
    auto inst = instance_A({2, 1, 1, 1});
    auto rep = optimize(inst, {0, 1, 1, 0}, SolverConfig::exact());
    REQUIRE(rep.status == SolveStatus::Optimal);
    CHECK(rep.trace.empty());
    CHECK(*rep.point == Point{0, 1, 1, 0});
    CHECK(*rep.objective_value == 2);
  }
  SUBCASE("reaches the optimum") {
    auto inst = instance_A({2, 1, 1, 1});
    auto rep = optimize(inst, {1, 0, 1, 0}, SolverConfig::exact());
    REQUIRE(rep.status == SolveStatus::Optimal);
    CHECK(*rep.objective_value == 2);
  }
  SUBCASE("piecewise objective walks to the far corner") {
    // One brick, two free coordinates summing to 4; x1 costs x1^2.
    std::vector<PwlPoint> square;
    for (i64 x = 0; x <= 4; ++x) square.push_back({x, x * x});
    auto inst = make_instance(1, {{0, 0}}, {0}, {4}, {0, 0}, {4, 4}, SeparableObjective::zeros(2));
    inst.objective.terms[0] = UnivariateTerm::pwl(square);
    auto x0 = find_initial_feasible(inst);
    REQUIRE(x0.has_value());
    auto rep = optimize(inst, *x0, SolverConfig::exact());
    REQUIRE(rep.status == SolveStatus::Optimal);
    CHECK(*rep.objective_value == 0);
    CHECK(*rep.point == Point{0, 4});
  }
  SUBCASE("iteration cap reports an error with partial progress") {
    auto inst = instance_A({2, 1, 1, 1});
    SolverConfig cfg;
    cfg.max_iterations = 0;
    auto rep = optimize(inst, {1, 0, 1, 0}, cfg);
    CHECK(rep.status == SolveStatus::Error);
    CHECK(rep.error.find("iteration limit") != std::string::npos);
  }
}

TEST_CASE("initial feasible point") {
  SUBCASE("greedy fill suffices on the shared fixture") {
    auto x0 = find_initial_feasible(instance_A());
    REQUIRE(x0.has_value());
    CHECK(*x0 == Point{1, 0, 1, 0});
  }
  SUBCASE("capacity reject") {
    auto inst = make_instance(1, {{1, 0}}, {0}, {3}, {0, 0}, {1, 1}, SeparableObjective::zeros(2));
    CHECK_FALSE(find_initial_feasible(inst).has_value());
  }
  SUBCASE("auxiliary phase proves infeasibility") {
    auto inst = make_instance(1, {{1, 0}}, {2}, {1}, {0, 0}, {1, 1}, SeparableObjective::zeros(2));
    CHECK_FALSE(find_initial_feasible(inst).has_value());
  }
  SUBCASE("auxiliary phase repairs the global rows") {
    // Greedy fill gives (1,0) per brick; the global row then needs a swap.
    auto inst = make_instance(2, {{1, 0}}, {0}, {1, 1}, {0, 0, 0, 0}, {1, 1, 1, 1},
                              SeparableObjective::zeros(4));
    auto x0 = find_initial_feasible(inst);
    REQUIRE(x0.has_value());
    CHECK(is_feasible(inst, *x0));
  }
}

TEST_CASE("full pipeline on the shared fixtures") {
  auto rep = solve(instance_A({2, 1, 1, 1}));
  REQUIRE(rep.status == SolveStatus::Optimal);
  CHECK(*rep.objective_value == 2);

  auto infeasible = make_instance(1, {{1, 0}}, {2}, {1}, {0, 0}, {1, 1},
                                  SeparableObjective::zeros(2));
  CHECK(solve(infeasible).status == SolveStatus::Infeasible);
}

TEST_CASE("exact mode matches the enumeration oracle on a random corpus") {
  std::mt19937_64 rng(4242);
  for (int it = 0; it < 60; ++it) {
    auto inst = testutil::random_instance(rng);
    auto expected = oracle::brute_force_solve(inst);
    auto got = solve(inst, SolverConfig::exact());
    CHECK(got.status == expected.status);
    if (expected.status == SolveStatus::Optimal) {
      CHECK(*got.objective_value == *expected.objective_value);
      CHECK(is_feasible(inst, *got.point));
    }
  }
}

TEST_CASE("trace is strictly decreasing and within the step budget") {
  std::mt19937_64 rng(515);
  for (int it = 0; it < 30; ++it) {
    auto inst = testutil::random_instance(rng);
    auto x0 = find_initial_feasible(inst);
    if (!x0) continue;
    auto rep = optimize(inst, *x0, SolverConfig::exact());
    REQUIRE(rep.status == SolveStatus::Optimal);
    i64 f0 = evaluate_objective(inst, *x0);
    i64 dropped = 0;
    for (const auto& e : rep.trace) {
      CHECK(e.drop > 0);
      dropped += e.drop;
    }
    CHECK(f0 - dropped == *rep.objective_value);
    // Conservative step budget: 4*n*t*(1 + log2(1 + initial gap)).
    const i64 gap = f0 - *rep.objective_value;
    double budget = 4.0 * static_cast<double>(inst.n * inst.t()) *
                    (1.0 + std::log2(1.0 + static_cast<double>(gap)));
    CHECK(static_cast<double>(rep.trace.size()) <= budget);
  }
}

TEST_CASE("serial and parallel sweeps agree") {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 20; ++it) {
    auto inst = testutil::random_instance(rng);
    auto x0 = find_initial_feasible(inst);
    if (!x0) continue;
    SolverConfig par = SolverConfig::exact();
    SolverConfig ser = SolverConfig::exact();
    ser.parallel = false;
    auto a = graver_best_step(inst, *x0, par);
    auto b = graver_best_step(inst, *x0, ser);
    CHECK(a.has_value() == b.has_value());
    if (a && b) {
      CHECK(a->alpha == b->alpha);
      CHECK(a->weight == b->weight);
      CHECK(a->direction == b->direction);
    }
  }
}

TEST_CASE("power-of-two sweep reaches the same optimum") {
  std::mt19937_64 rng(77);
  for (int it = 0; it < 25; ++it) {
    auto inst = testutil::random_instance(rng);
    SolverConfig full = SolverConfig::exact();
    SolverConfig pow2 = SolverConfig::exact();
    pow2.alpha_strategy = AlphaStrategy::PowersOfTwoThenRefine;
    auto a = solve(inst, full);
    auto b = solve(inst, pow2);
    CHECK(a.status == b.status);
    if (a.status == SolveStatus::Optimal) CHECK(*a.objective_value == *b.objective_value);
  }
}
