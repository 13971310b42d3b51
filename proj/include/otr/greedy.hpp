#pragma once

#include <stdexcept>

#include "otr/model.hpp"

namespace otr {

// Raised when every arc is saturated at some user's arrival instant.
struct NoArcAvailable : std::runtime_error {
  int user_index;
  explicit NoArcAvailable(int i)
      : std::runtime_error("no arc below capacity for user " + std::to_string(i)),
        user_index(i) {}
};

// Online greedy: each user takes the cheapest arc (smallest index, arcs being
// sorted by travel time) strictly below capacity at their arrival instant.
Assignment greedy_route(const NetworkSpec& net, const InputSequence& seq);

// cost / optimum, the empirical performance ratio. Throws std::domain_error
// if opt_value <= 0.
double empirical_ratio(double algorithm_cost, double opt_value);

}  // namespace otr
