#pragma once

#include <cstdint>
#include <vector>

#include "otr/model.hpp"
#include "otr/policy.hpp"

// Online application of a learned policy: each user i draws
// u_i = uniform01(derive_seed(seed, i)) and takes the arc whose quantile
// range of the policy's probability vector contains u_i. Capacities are
// ignored by design; breaches are recorded downstream, not repaired.

namespace otr {

// Quantile lookup: ranges [sum_{b<a} p_b, sum_{b<=a} p_b) half-open, the
// last nonempty range closed at 1. Requires u in [0,1] and probs on the
// simplex (1e-9 slack).
int arc_for_uniform(const std::vector<double>& probs, double u);

Assignment route_online(const TiPolicy& policy, const NetworkSpec& net,
                        const InputSequence& seq, std::uint64_t seed);
Assignment route_online(const TdPolicy& policy, const NetworkSpec& net,
                        const InputSequence& seq, std::uint64_t seed);

// Expectation of the rounded cost in closed form:
// sum_i vot_i * sum_a p_a(i) * travel_time_a.
double expected_cost(const TiPolicy& policy, const NetworkSpec& net,
                     const InputSequence& seq);
double expected_cost(const TdPolicy& policy, const NetworkSpec& net,
                     const InputSequence& seq);

}  // namespace otr
