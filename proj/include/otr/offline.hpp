#pragma once

#include <functional>

#include "otr/lp.hpp"
#include "otr/model.hpp"

namespace otr {

struct OptResult {
  enum class Status { Optimal, Infeasible };
  Status status = Status::Infeasible;
  double value = 0.0;
  Assignment assignment;
};

// Hindsight routing program: per-user simplex rows plus one capacity row per
// (arc, arrival instant). Variable (i, a) sits at column i * M + a.
LinearProgram build_fractional_lp(const NetworkSpec& net, const InputSequence& seq);

// Fractional offline optimum (LP relaxation); lower-bounds every feasible
// integral routing, so it is the benchmark denominator everywhere.
OptResult opt_fractional(const NetworkSpec& net, const InputSequence& seq);

// Exact integral optimum by pruned exhaustive search. Guarded to tiny
// instances (n <= 12); throws std::invalid_argument beyond that.
OptResult opt_integral_bruteforce(const NetworkSpec& net, const InputSequence& seq);

// Enumerate every capacity-feasible integral assignment (same n <= 12 guard).
// `fn` receives the per-user arc choices.
void for_each_feasible_assignment(const NetworkSpec& net, const InputSequence& seq,
                                  const std::function<void(const std::vector<int>&)>& fn);

}  // namespace otr
