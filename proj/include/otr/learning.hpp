#pragma once

#include <vector>

#include "otr/lp.hpp"
#include "otr/model.hpp"
#include "otr/policy.hpp"

// Data-driven policy construction. Each training scenario (a sampled
// sequence together with its fractional offline optimum) contributes one
// block of constraints: its cost-ratio row plus one expected-occupancy row
// per (arc, arrival instant). Minimizing the ratio bound alpha over these
// blocks yields a policy whose certified ratio alpha_star holds on every
// training scenario simultaneously.

namespace otr {

struct TrainingScenario {
  InputSequence sequence;
  double opt_value = 0.0;  // fractional offline optimum, must be > 0
};

// Assembled scenario program plus the bookkeeping needed to drop one
// scenario's whole block (leave-one-out) without rebuilding.
struct ScenarioLp {
  LinearProgram lp;
  std::vector<int> row_scenario;  // per row: owning scenario index, -1 = shared
  int alpha_col = 0;              // always 0; probability columns follow
  int num_prob_vars = 0;
};

// Column of probability variable (theta index t, arc a): 1 + t * M + a.
ScenarioLp build_ti_lp(const NetworkSpec& net,
                       const std::vector<TrainingScenario>& training);

// Time-dependent variant, one probability table per interval. Column of
// (interval j, theta index t, arc a): 1 + (j * T + t) * M + a.
ScenarioLp build_td_lp(const NetworkSpec& net,
                       const std::vector<TrainingScenario>& training,
                       const std::vector<double>& boundaries);

// Solve the scenario program lexicographically (ties broken toward
// cheaper arcs; see lexicographic_solve) and package the policy.
// `degenerate`, if non-null, reports a residual tie.
TiPolicy learn_ti(const NetworkSpec& net,
                  const std::vector<TrainingScenario>& training,
                  bool* degenerate = nullptr);
TdPolicy learn_td(const NetworkSpec& net,
                  const std::vector<TrainingScenario>& training,
                  const std::vector<double>& boundaries,
                  bool* degenerate = nullptr);

struct SupportInfo {
  int count = 0;
  std::vector<int> scenario_indices;  // ascending
};

// Number of training scenarios whose removal moves the lexicographic
// optimum (|alpha change| > 1e-7 * max(1, alpha) or any probability moving
// by > 1e-7). These are the support scenarios of the program.
SupportInfo count_support_ti(const NetworkSpec& net,
                             const std::vector<TrainingScenario>& training);
SupportInfo count_support_td(const NetworkSpec& net,
                             const std::vector<TrainingScenario>& training,
                             const std::vector<double>& boundaries);

struct ViolationDetails {
  bool violated = false;
  bool ratio_violated = false;
  int capacity_rows_violated = 0;
  double ratio = 0.0;  // expected cost / opt_value
};

// Would the scenario (sequence, opt_value) have added a constraint the
// learned policy breaks? True when the policy's expected cost exceeds
// alpha_star * opt_value or any expected-occupancy row overflows.
ViolationDetails violation_check(const TiPolicy& policy, const NetworkSpec& net,
                                 const InputSequence& seq, double opt_value);
ViolationDetails violation_check(const TdPolicy& policy, const NetworkSpec& net,
                                 const InputSequence& seq, double opt_value);

}  // namespace otr
