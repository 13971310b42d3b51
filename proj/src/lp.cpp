#include "otr/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "otr/rng.hpp"

namespace otr {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr long kMaxIterations = 1000000;
constexpr int kStallLimit = 64;  // degenerate pivots before switching to Bland's rule
// Dantzig pricing can shuffle indefinitely on near-degenerate programs whose
// tiny objective steps keep resetting the stall counter; past this budget the
// solve finishes under Bland's rule, which terminates.
constexpr long kBlandBudget = 20000;

// Row-generation knobs: programs above the row threshold are solved on a
// growing active subset.
constexpr int kDirectRowLimit = 200;
constexpr int kInitialInequalityRows = 64;
constexpr int kRowsPerRound = 128;

struct Tableau {
  int m = 0;       // constraint rows
  int ncols = 0;   // structural + slack + artificial columns
  int nstruct = 0; // original variable count
  int art_begin = 0;
  std::vector<double> t;  // m x ncols
  std::vector<double> b;  // rhs, kept nonnegative
  std::vector<int> basis;
  std::vector<double> red;  // reduced-cost row
  double red_rhs = 0;       // -objective value
  std::vector<int> init_col;  // per row: its initial identity column
  std::vector<int> row_sign;  // +1, or -1 if the row was negated to make rhs >= 0
  long iterations = 0;
  bool bland = false;
  int stall = 0;
  double last_obj = std::numeric_limits<double>::infinity();

  double* row(int r) { return t.data() + static_cast<size_t>(r) * ncols; }
  const double* row(int r) const { return t.data() + static_cast<size_t>(r) * ncols; }
};

enum class StepResult { Pivoted, Optimal, Unbounded, IterationLimit };

struct StepOutcome {
  StepResult result;
  int unbounded_col = -1;  // entering column certifying unboundedness
};

void pivot(Tableau& tb, int r, int jcol) {
  double* pr = tb.row(r);
  const double piv = pr[jcol];
  const double inv = 1.0 / piv;
  for (int j = 0; j < tb.ncols; ++j) pr[j] *= inv;
  pr[jcol] = 1.0;  // kill residual rounding on the pivot column
  tb.b[r] *= inv;
  for (int r2 = 0; r2 < tb.m; ++r2) {
    if (r2 == r) continue;
    double* p2 = tb.row(r2);
    const double f = p2[jcol];
    if (f == 0.0) continue;
    for (int j = 0; j < tb.ncols; ++j) p2[j] -= f * pr[j];
    p2[jcol] = 0.0;
    tb.b[r2] -= f * tb.b[r];
  }
  const double f = tb.red[jcol];
  if (f != 0.0) {
    for (int j = 0; j < tb.ncols; ++j) tb.red[j] -= f * pr[j];
    tb.red[jcol] = 0.0;
    tb.red_rhs -= f * tb.b[r];
  }
  tb.basis[r] = jcol;
}

// One simplex step. `allow_artificial_entering` is true only in phase 1.
StepOutcome simplex_step(Tableau& tb, bool allow_artificial_entering) {
  if (tb.iterations >= kMaxIterations) return {StepResult::IterationLimit};
  if (!tb.bland && tb.iterations >= kBlandBudget) tb.bland = true;

  int jcol = -1;
  if (tb.bland) {
    for (int j = 0; j < tb.ncols; ++j) {
      if (!allow_artificial_entering && j >= tb.art_begin) break;
      if (tb.red[j] < -kCostTol) {
        jcol = j;
        break;
      }
    }
  } else {
    double best = -kCostTol;
    const int lim = allow_artificial_entering ? tb.ncols : tb.art_begin;
    for (int j = 0; j < lim; ++j) {
      if (tb.red[j] < best) {
        best = tb.red[j];
        jcol = j;
      }
    }
  }
  if (jcol < 0) return {StepResult::Optimal};

  // Zero-level artificial rows leave first so they can never turn positive.
  int rpiv = -1;
  if (!allow_artificial_entering) {
    for (int r = 0; r < tb.m; ++r) {
      if (tb.basis[r] >= tb.art_begin && std::abs(tb.row(r)[jcol]) > kPivotTol) {
        rpiv = r;
        break;
      }
    }
  }
  if (rpiv < 0) {
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < tb.m; ++r) {
      const double a = tb.row(r)[jcol];
      if (a > kPivotTol) {
        const double ratio = tb.b[r] / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && rpiv >= 0 && tb.basis[r] < tb.basis[rpiv])) {
          best_ratio = ratio;
          rpiv = r;
        }
      }
    }
    if (rpiv < 0) return {StepResult::Unbounded, jcol};
  }

  const double before = -tb.red_rhs;
  pivot(tb, rpiv, jcol);
  ++tb.iterations;
  const double after = -tb.red_rhs;
  if (std::abs(after - before) <= 1e-12 * std::max(1.0, std::abs(before))) {
    if (++tb.stall >= kStallLimit) tb.bland = true;
  } else {
    tb.stall = 0;
  }
  return {StepResult::Pivoted};
}

void load_cost(Tableau& tb, const std::vector<double>& cost) {
  tb.red = cost;
  tb.red.resize(tb.ncols, 0.0);
  tb.red_rhs = 0;
  for (int r = 0; r < tb.m; ++r) {
    const double cb = tb.red[tb.basis[r]];
    if (cb != 0.0) {
      const double* pr = tb.row(r);
      for (int j = 0; j < tb.ncols; ++j) tb.red[j] -= cb * pr[j];
      tb.red_rhs -= cb * tb.b[r];
      tb.red[tb.basis[r]] = 0.0;
    }
  }
  tb.bland = false;
  tb.stall = 0;
}

}  // namespace

LpSolution solve_direct(const LinearProgram& lp) {
  const int nv = lp.num_vars();
  const int m = static_cast<int>(lp.rows.size());
  for (const LpRow& r : lp.rows) {
    if (static_cast<int>(r.coeffs.size()) != nv) {
      throw std::invalid_argument("row width does not match variable count");
    }
  }

  // Normalize signs, then lay out columns: structural | slack | artificial.
  int nslack = 0, nart = 0;
  std::vector<Relation> rel(m);
  std::vector<int> sign(m, 1);
  for (int r = 0; r < m; ++r) {
    rel[r] = lp.rows[r].rel;
    if (lp.rows[r].rhs < 0) {
      sign[r] = -1;
      if (rel[r] == Relation::LE) rel[r] = Relation::GE;
      else if (rel[r] == Relation::GE) rel[r] = Relation::LE;
    }
    if (rel[r] != Relation::EQ) ++nslack;
    if (rel[r] != Relation::LE) ++nart;
  }

  Tableau tb;
  tb.m = m;
  tb.nstruct = nv;
  tb.art_begin = nv + nslack;
  tb.ncols = nv + nslack + nart;
  tb.t.assign(static_cast<size_t>(m) * tb.ncols, 0.0);
  tb.b.resize(m);
  tb.basis.resize(m);
  tb.init_col.resize(m);
  tb.row_sign = sign;

  int slack_at = nv, art_at = tb.art_begin;
  for (int r = 0; r < m; ++r) {
    double* pr = tb.row(r);
    for (int j = 0; j < nv; ++j) pr[j] = sign[r] * lp.rows[r].coeffs[j];
    tb.b[r] = sign[r] * lp.rows[r].rhs;
    if (rel[r] == Relation::LE) {
      pr[slack_at] = 1.0;
      tb.basis[r] = slack_at;
      tb.init_col[r] = slack_at++;
    } else if (rel[r] == Relation::GE) {
      pr[slack_at++] = -1.0;
      pr[art_at] = 1.0;
      tb.basis[r] = art_at;
      tb.init_col[r] = art_at++;
    } else {
      pr[art_at] = 1.0;
      tb.basis[r] = art_at;
      tb.init_col[r] = art_at++;
    }
  }

  LpSolution sol;

  // Phase 1: minimize the artificial mass.
  if (nart > 0) {
    std::vector<double> phase1(tb.ncols, 0.0);
    for (int j = tb.art_begin; j < tb.ncols; ++j) phase1[j] = 1.0;
    load_cost(tb, phase1);
    for (;;) {
      const StepOutcome st = simplex_step(tb, true);
      if (st.result == StepResult::Pivoted) continue;
      if (st.result == StepResult::IterationLimit) {
        sol.status = LpStatus::IterationLimit;
        sol.iterations = tb.iterations;
        return sol;
      }
      break;  // Optimal; phase-1 objective is bounded below by 0
    }
    double scale = 1.0;
    for (int r = 0; r < m; ++r) scale = std::max(scale, std::abs(tb.b[r]));
    if (-tb.red_rhs > 1e-7 * scale) {
      sol.status = LpStatus::Infeasible;
      sol.iterations = tb.iterations;
      return sol;
    }
    // Drive remaining zero-level artificials onto structural/slack columns
    // where possible; rows that cannot pivot are redundant and keep their
    // artificial basic at level zero (it is barred from turning positive).
    for (int r = 0; r < m; ++r) {
      if (tb.basis[r] < tb.art_begin) continue;
      const double* pr = tb.row(r);
      for (int j = 0; j < tb.art_begin; ++j) {
        if (std::abs(pr[j]) > 1e-7) {
          pivot(tb, r, j);
          break;
        }
      }
    }
  }

  // Phase 2.
  load_cost(tb, lp.objective);
  for (;;) {
    const StepOutcome st = simplex_step(tb, false);
    if (st.result == StepResult::Pivoted) continue;
    sol.iterations = tb.iterations;
    if (st.result == StepResult::IterationLimit) {
      sol.status = LpStatus::IterationLimit;
      return sol;
    }
    if (st.result == StepResult::Unbounded) {
      const int jcol = st.unbounded_col;
      sol.status = LpStatus::Unbounded;
      sol.ray.assign(nv, 0.0);
      if (jcol < nv) sol.ray[jcol] = 1.0;
      for (int r = 0; r < m; ++r) {
        if (tb.basis[r] < nv) sol.ray[tb.basis[r]] = -tb.row(r)[jcol];
      }
      return sol;
    }
    break;
  }

  sol.status = LpStatus::Optimal;
  sol.x.assign(nv, 0.0);
  for (int r = 0; r < m; ++r) {
    if (tb.basis[r] < nv) sol.x[tb.basis[r]] = tb.b[r];
  }
  sol.objective = -tb.red_rhs;
  sol.duals.resize(m);
  for (int r = 0; r < m; ++r) {
    // The initial identity column of each row carries -y_r in the final
    // reduced-cost row (its phase-2 cost is zero either way).
    sol.duals[r] = -tb.red[tb.init_col[r]] * tb.row_sign[r];
  }
  return sol;
}

namespace {

double row_activity(const LpRow& row, const std::vector<double>& x) {
  double s = 0;
  for (size_t j = 0; j < row.coeffs.size(); ++j) s += row.coeffs[j] * x[j];
  return s;
}

double row_violation(const LpRow& row, const std::vector<double>& x) {
  const double v = row_activity(row, x);
  switch (row.rel) {
    case Relation::LE: return v - row.rhs;
    case Relation::GE: return row.rhs - v;
    case Relation::EQ: return std::abs(v - row.rhs);
  }
  return 0;
}

LpSolution solve_with_row_generation(const LinearProgram& lp) {
  const int m = static_cast<int>(lp.rows.size());
  std::vector<char> active(m, 0);
  int ineq_taken = 0;
  for (int r = 0; r < m; ++r) {
    if (lp.rows[r].rel == Relation::EQ) {
      active[r] = 1;
    } else if (ineq_taken < kInitialInequalityRows) {
      active[r] = 1;
      ++ineq_taken;
    }
  }

  LinearProgram sub;
  sub.objective = lp.objective;
  std::vector<int> sub_rows;
  LpSolution s;
  for (;;) {
    sub.rows.clear();
    sub_rows.clear();
    for (int r = 0; r < m; ++r) {
      if (active[r]) {
        sub.rows.push_back(lp.rows[r]);
        sub_rows.push_back(r);
      }
    }
    s = solve_direct(sub);
    if (s.status == LpStatus::Infeasible || s.status == LpStatus::IterationLimit) {
      return s;  // a relaxation being infeasible settles the full program
    }
    if (s.status == LpStatus::Unbounded) {
      int added = 0;
      for (int r = 0; r < m && added < kRowsPerRound; ++r) {
        if (!active[r]) {
          active[r] = 1;
          ++added;
        }
      }
      if (added == 0) return s;  // genuinely unbounded
      continue;
    }
    // Pull in the worst violated inactive rows.
    std::vector<std::pair<double, int>> viol;
    for (int r = 0; r < m; ++r) {
      if (active[r]) continue;
      const double v = row_violation(lp.rows[r], s.x);
      if (v > 1e-9) viol.push_back({v, r});
    }
    if (viol.empty()) break;
    std::sort(viol.begin(), viol.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    const int take = std::min<int>(kRowsPerRound, static_cast<int>(viol.size()));
    for (int i = 0; i < take; ++i) active[viol[i].second] = 1;
  }

  std::vector<double> duals(m, 0.0);
  for (size_t i = 0; i < sub_rows.size(); ++i) duals[sub_rows[i]] = s.duals[i];
  s.duals = std::move(duals);
  return s;
}

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  if (static_cast<int>(lp.rows.size()) <= kDirectRowLimit) return solve_direct(lp);
  return solve_with_row_generation(lp);
}

LpSolution lexicographic_solve(const LinearProgram& lp,
                               const std::vector<double>& secondary,
                               bool* degenerate) {
  if (degenerate) *degenerate = false;
  LpSolution first = solve(lp);
  if (first.status != LpStatus::Optimal) return first;

  auto pinned = [&](const LinearProgram& base, const std::vector<double>& obj,
                    double value) {
    LinearProgram next = base;
    next.rows.push_back({obj, Relation::EQ, value});
    return next;
  };

  LinearProgram second_lp = pinned(lp, lp.objective, first.objective);
  second_lp.objective = secondary;
  LpSolution second = solve(second_lp);
  if (second.status == LpStatus::Infeasible) {
    // The equality pin can be a hair too sharp in floating point; allow a
    // relative sliver.
    const double slack = 1e-8 * std::max(1.0, std::abs(first.objective));
    LinearProgram relaxed = lp;
    relaxed.rows.push_back({lp.objective, Relation::LE, first.objective + slack});
    relaxed.rows.push_back({lp.objective, Relation::GE, first.objective - slack});
    relaxed.objective = secondary;
    second = solve(relaxed);
  }
  if (second.status != LpStatus::Optimal) return second;

  if (degenerate) {
    // Probe the (primary, secondary)-optimal face with generic weights; a
    // different vertex means the refinement still did not pin the point.
    LinearProgram probe_lp = pinned(second_lp, secondary, second.objective);
    probe_lp.objective.assign(lp.num_vars(), 0.0);
    for (int j = 0; j < lp.num_vars(); ++j) {
      probe_lp.objective[j] = 1.0 + uniform01(derive_seed(0xC0FFEEULL, j));
    }
    LpSolution probe = solve(probe_lp);
    if (probe.status == LpStatus::Optimal) {
      for (int j = 0; j < lp.num_vars(); ++j) {
        if (std::abs(probe.x[j] - second.x[j]) > 1e-7) {
          *degenerate = true;
          break;
        }
      }
    }
  }

  double primary_value = 0;
  for (int j = 0; j < lp.num_vars(); ++j) primary_value += lp.objective[j] * second.x[j];
  second.objective = primary_value;
  second.duals.clear();  // duals of the pinned program are not the caller's duals
  return second;
}

std::string dump_lp(const LinearProgram& lp) {
  std::ostringstream os;
  os << "min";
  for (double c : lp.objective) os << ' ' << c;
  os << '\n';
  for (const LpRow& r : lp.rows) {
    for (double c : r.coeffs) os << c << ' ';
    os << (r.rel == Relation::LE ? "<=" : r.rel == Relation::GE ? ">=" : "=");
    os << ' ' << r.rhs << '\n';
  }
  return os.str();
}

}  // namespace otr
