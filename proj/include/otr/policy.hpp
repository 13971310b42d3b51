#pragma once

#include <vector>

// Randomized routing policies learned from sampled scenarios. A policy maps a
// user's VOT (and, for the time-dependent variant, the interval containing
// the arrival time) to a probability vector over arcs. alpha_star is the
// certified worst-case cost ratio over the training scenarios.

namespace otr {

struct TiPolicy {  // time-invariant
  std::vector<double> theta;                // VOT alphabet, ascending
  std::vector<std::vector<double>> probs;   // [theta index][arc]
  double alpha_star = 0.0;

  const std::vector<double>& probs_for(double vot) const;  // throws std::out_of_range
};

struct TdPolicy {  // time-dependent
  std::vector<double> theta;
  std::vector<double> boundaries;  // interval starts, first must be 0; last interval open-ended
  std::vector<std::vector<std::vector<double>>> probs;  // [interval][theta index][arc]
  double alpha_star = 0.0;

  const std::vector<double>& probs_for(double vot, double tau) const;
};

// Index j with boundaries[j] <= tau < boundaries[j+1] (last interval
// unbounded). Throws std::domain_error for tau before the first boundary.
int interval_index(const std::vector<double>& boundaries, double tau);

}  // namespace otr
