#include <doctest.h>

#include <cmath>

#include "otr/lp.hpp"
#include "otr/rng.hpp"
#include "test_support.hpp"

using namespace otr;

namespace {

LinearProgram make_lp(std::vector<double> obj,
                      std::vector<std::tuple<std::vector<double>, Relation, double>> rows) {
  LinearProgram lp;
  lp.objective = std::move(obj);
  for (auto& [c, rel, rhs] : rows) lp.rows.push_back({std::move(c), rel, rhs});
  return lp;
}

}  // namespace

TEST_CASE("simple bounded minimum") {
  const LinearProgram lp =
      make_lp({-2, -1}, {{{1, 1}, Relation::LE, 1}});
  const LpSolution s = solve(lp);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(-2).epsilon(1e-9));
  CHECK(s.x[0] == doctest::Approx(1).epsilon(1e-9));
  CHECK(s.x[1] == doctest::Approx(0).epsilon(1e-9));
}

TEST_CASE("equality and lower-bounding rows") {
  const LinearProgram lp = make_lp(
      {2, 3}, {{{1, 1}, Relation::GE, 2}, {{1, 0}, Relation::GE, 0.5}});
  const LpSolution s = solve(lp);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(4).epsilon(1e-9));
  CHECK(s.x[0] == doctest::Approx(2).epsilon(1e-9));

  // Strong duality: b'y equals the optimum, with sign-correct multipliers.
  REQUIRE(s.duals.size() == 2);
  CHECK(2 * s.duals[0] + 0.5 * s.duals[1] == doctest::Approx(4).epsilon(1e-7));
  CHECK(s.duals[0] >= -1e-9);  // GE rows carry nonnegative multipliers
  CHECK(s.duals[1] >= -1e-9);
}

TEST_CASE("negative rhs rows are normalized correctly") {
  // x >= 1 written as -x <= -1.
  const LinearProgram lp = make_lp({1}, {{{-1}, Relation::LE, -1}});
  const LpSolution s = solve(lp);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(1).epsilon(1e-9));
  CHECK(-1 * s.duals[0] == doctest::Approx(1).epsilon(1e-7));  // b'y with original data
}

TEST_CASE("infeasibility is detected") {
  const LinearProgram lp = make_lp({1}, {{{1}, Relation::LE, -1}});
  CHECK(solve(lp).status == LpStatus::Infeasible);

  const LinearProgram lp2 = make_lp(
      {1, 1}, {{{1, 1}, Relation::LE, 1}, {{1, 1}, Relation::GE, 3}});
  CHECK(solve(lp2).status == LpStatus::Infeasible);
}

TEST_CASE("unboundedness produces a certified ray") {
  const LinearProgram lp = make_lp({-1, 0}, {{{1, -1}, Relation::LE, 1}});
  const LpSolution s = solve(lp);
  REQUIRE(s.status == LpStatus::Unbounded);
  REQUIRE(s.ray.size() == 2);
  CHECK(testutil::ray_is_valid(lp, s.ray));
}

TEST_CASE("degenerate pivoting terminates (classic cycling example)") {
  const LinearProgram lp = make_lp(
      {-0.75, 150, -0.02, 6},
      {{{0.25, -60, -0.04, 9}, Relation::LE, 0},
       {{0.5, -90, -0.02, 3}, Relation::LE, 0},
       {{0, 0, 1, 0}, Relation::LE, 1}});
  const LpSolution s = solve(lp);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(-0.05).epsilon(1e-9));
}

TEST_CASE("lexicographic refinement keeps the primary optimum") {
  // Primary optimum is the whole segment x + y = 1; the secondary picks x.
  const LinearProgram lp = make_lp({1, 1}, {{{1, 1}, Relation::GE, 1}});
  bool degenerate = true;
  const LpSolution s = lexicographic_solve(lp, {0, 1}, &degenerate);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(1).epsilon(1e-9));  // primary value, not secondary
  CHECK(s.x[0] == doctest::Approx(1).epsilon(1e-7));
  CHECK(s.x[1] == doctest::Approx(0).epsilon(1e-7));
  CHECK_FALSE(degenerate);  // (1,0) is the unique secondary optimum

  // The probe flag is deterministic.
  bool again = true;
  lexicographic_solve(lp, {0, 1}, &again);
  CHECK(again == degenerate);
}

TEST_CASE("lexicographic refinement on an infeasible program passes the status through") {
  const LinearProgram lp = make_lp({1}, {{{1}, Relation::LE, -1}});
  CHECK(lexicographic_solve(lp, {1}).status == LpStatus::Infeasible);
}

TEST_CASE("row generation matches the direct solver") {
  // A program wide enough to cross the row-generation threshold: minimize
  // total mass subject to many redundant covers plus a few binding rows.
  otr::Rng rng(2024);
  LinearProgram lp;
  const int n = 5;
  lp.objective = {3, 1, 4, 1, 5};
  for (int r = 0; r < 300; ++r) {
    LpRow row;
    row.coeffs.assign(n, 0.0);
    for (int j = 0; j < n; ++j) row.coeffs[j] = testutil::rand_int(rng, 0, 3);
    bool any = false;
    for (double c : row.coeffs) any = any || c > 0;
    if (!any) row.coeffs[r % n] = 1;
    row.rel = Relation::GE;
    row.rhs = testutil::rand_int(rng, 1, 6);
    lp.rows.push_back(std::move(row));
  }
  const LpSolution lazy = solve(lp);          // row count exceeds the direct limit
  const LpSolution direct = solve_direct(lp);
  REQUIRE(lazy.status == LpStatus::Optimal);
  REQUIRE(direct.status == LpStatus::Optimal);
  CHECK(lazy.objective == doctest::Approx(direct.objective).epsilon(1e-9));
  // Every row holds at the lazy solution.
  CHECK(testutil::point_feasible(lp, lazy.x, 1e-7));
  // Duals of inactive rows are zero and b'y still matches the optimum.
  double by = 0;
  for (size_t r = 0; r < lp.rows.size(); ++r) by += lp.rows[r].rhs * lazy.duals[r];
  CHECK(by == doctest::Approx(lazy.objective).epsilon(1e-7));
}

TEST_CASE("fuzzed programs agree with exhaustive vertex enumeration") {
  otr::Rng rng(99);
  int optimal_cases = 0, unbounded_cases = 0, infeasible_cases = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const LinearProgram lp = testutil::random_small_lp(rng);
    const LpSolution s = solve(lp);
    REQUIRE(s.status != LpStatus::IterationLimit);
    const testutil::VertexScan scan = testutil::enumerate_vertices(lp);
    if (s.status == LpStatus::Optimal) {
      ++optimal_cases;
      REQUIRE(scan.feasible);
      CHECK(s.objective ==
            doctest::Approx(scan.best_value).epsilon(1e-7).scale(std::max(
                1.0, std::abs(scan.best_value))));
      double by = 0;
      for (size_t r = 0; r < lp.rows.size(); ++r) by += lp.rows[r].rhs * s.duals[r];
      CHECK(std::abs(by - s.objective) <= 1e-7 * std::max(1.0, std::abs(s.objective)));
    } else if (s.status == LpStatus::Unbounded) {
      ++unbounded_cases;
      CHECK(scan.feasible);  // nonempty region is required for unboundedness
      CHECK(testutil::ray_is_valid(lp, s.ray));
    } else {
      ++infeasible_cases;
      CHECK_FALSE(scan.feasible);
    }
  }
  // The generator must exercise all three statuses.
  CHECK(optimal_cases > 50);
  CHECK(unbounded_cases > 5);
  CHECK(infeasible_cases > 5);
}

TEST_CASE("lp dump is readable") {
  const LinearProgram lp = make_lp({1, 2}, {{{1, 1}, Relation::EQ, 3}});
  const std::string text = dump_lp(lp);
  CHECK(text.find("min 1 2") != std::string::npos);
  CHECK(text.find("= 3") != std::string::npos);
}
