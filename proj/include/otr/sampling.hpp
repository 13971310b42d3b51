#pragma once

#include <cstdint>

#include "otr/model.hpp"

namespace otr {

// Draw an n-user sequence from `profile`. The first arrival is pinned to
// time 0 (only its VOT is drawn); later arrivals follow a piecewise-constant
// Poisson process: an exponential inter-arrival is drawn at the current
// segment's rate, and a candidate that crosses the next segment boundary is
// discarded, the clock advanced to the boundary, and the draw repeated at the
// new rate. Draw order per user: inter-arrival draws (including discarded
// ones), then the VOT. Exact arrival ties abort (cannot happen under a
// continuous law unless the profile is degenerate).
InputSequence sample_sequence(const ArrivalProfile& profile, int n_users,
                              std::uint64_t seed);

}  // namespace otr
