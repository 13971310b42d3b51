#pragma once

#include <string>
#include <vector>

// Dense two-phase primal simplex for the small/medium LPs used here, plus a
// row-generation wrapper that makes the many-thousand-row scenario programs
// tractable: solve on an active subset, pull in the most-violated rows,
// repeat until every row holds. All variables are nonnegative unless an
// upper bound is set.

namespace otr {

enum class Relation { LE, EQ, GE };

struct LpRow {
  std::vector<double> coeffs;  // dense, one per variable
  Relation rel = Relation::LE;
  double rhs = 0.0;
};

struct LinearProgram {
  std::vector<double> objective;  // minimized
  std::vector<LpRow> rows;

  int num_vars() const { return static_cast<int>(objective.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  std::vector<double> duals;  // per original row; empty unless Optimal
  std::vector<double> ray;    // improving direction; set when Unbounded
  long iterations = 0;
};

// Solve min c'x subject to the rows and x >= 0 (plus upper bounds).
// Programs above an internal row-count threshold go through row generation;
// the result is identical in exact arithmetic and deterministic either way.
LpSolution solve(const LinearProgram& lp);

// Dense simplex only, no row generation (used by tests and as the inner
// engine of `solve`).
LpSolution solve_direct(const LinearProgram& lp);

// Minimize `secondary` over the primary optimal face (primary optimum pinned
// as an equality row). Returned objective is the PRIMARY optimal value; x is
// the secondary-refined point. If `degenerate` is non-null it is set to true
// when a probe with a third objective shows the refined point is still not
// unique.
LpSolution lexicographic_solve(const LinearProgram& lp,
                               const std::vector<double>& secondary,
                               bool* degenerate = nullptr);

// Human-readable rendering for debugging.
std::string dump_lp(const LinearProgram& lp);

}  // namespace otr
