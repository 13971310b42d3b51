#pragma once

// A-posteriori generalization bound for scenario programs: after observing
// the support-constraint count s among K samples, the probability mass of
// unseen scenarios that would violate the learned solution lies in
// [eps_lower, eps_upper] with confidence 1 - beta.

namespace otr {

struct RiskInterval {
  double eps_lower = 0.0;
  double eps_upper = 1.0;
  int support_count = 0;
  double beta = 0.0;
  int sample_count = 0;
};

// Both interval ends come from the two positive roots t_lo <= t_hi of
//
//   C(K,s) t^(K-s) - (beta/2) sum_{i=s}^{K-1} C(i,s) t^(i-s)
//                  - (beta/6) sum_{i=K+1}^{4K} C(i,s) t^(i-s) = 0
//
// via eps_upper = 1 - t_lo and eps_lower = max(0, 1 - t_hi). Requires
// sample_count > dimension, 0 <= support_count <= sample_count and
// beta in (0,1); `dimension` is the decision dimension of the program
// (number of variables minus the degrees absorbed by the simplex rows).
RiskInterval risk_interval(int sample_count, int support_count, double beta,
                           int dimension);

}  // namespace otr
