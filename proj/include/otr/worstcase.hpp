#pragma once

#include "otr/model.hpp"

// Hand-built adversarial instances with known greedy/optimum gaps, used as
// regression oracles for any routing algorithm.

namespace otr {

struct AdversarialInstance {
  NetworkSpec network;
  InputSequence sequence;
  double expected_ratio = 1.0;  // exact greedy-cost / optimum for this instance
};

// Three arcs (5, cap 1), (10.01, cap 1), (expensive_time, cap 10) and four
// unit-VOT arrivals timed so greedy burns the first two cheap slots and must
// send the last user onto the expensive arc, while the optimum reuses arcs
// 1 and 2. Ratio grows without bound in expensive_time.
// Requires expensive_time >= 10.01.
AdversarialInstance three_arc_trap(double expensive_time);

// Two unit-capacity arcs and two near-simultaneous users whose VOTs are
// ordered against the arc costs: greedy serves the low-VOT user first on the
// fast arc, the optimum swaps them. Requires 0 < eps < t1 <= t2 and
// vot_first <= vot_second.
AdversarialInstance vot_inversion_trap(double vot_first, double vot_second,
                                       double t1, double t2, double eps = 0.5);

// Closed form of the trap's ratio:
// (vot_first * t1 + vot_second * t2) / (vot_second * t1 + vot_first * t2).
double vot_inversion_ratio(double vot_first, double vot_second,
                           double t1, double t2);

}  // namespace otr
