#include "otr/worstcase.hpp"

#include <stdexcept>

namespace otr {

AdversarialInstance three_arc_trap(double expensive_time) {
  if (!(expensive_time >= 10.01)) {
    throw std::invalid_argument("expensive arc must be the slowest (>= 10.01)");
  }
  AdversarialInstance inst;
  inst.network.arcs = {{5.0, 1}, {10.01, 1}, {expensive_time, 10}};
  inst.sequence.vot_alphabet = {1.0};
  // Greedy: arcs 1, 2, 1, then both cheap arcs are still occupied at 10.1 and
  // the last user pays the expensive arc. Optimal reuses arc 1 for users 2,3
  // (gap 5.05 > 5) and arc 2 for users 1,4 (gap 10.1 > 10.01).
  for (double tau : {0.0, 0.15, 5.2, 10.1}) {
    inst.sequence.users.push_back({tau, 1.0});
  }
  const double opt = 2 * 5.0 + 2 * 10.01;
  inst.expected_ratio = (2 * 5.0 + 10.01 + expensive_time) / opt;
  return inst;
}

AdversarialInstance vot_inversion_trap(double vot_first, double vot_second,
                                       double t1, double t2, double eps) {
  if (!(0 < t1 && t1 <= t2)) throw std::invalid_argument("need 0 < t1 <= t2");
  if (!(0 < eps && eps < t1)) throw std::invalid_argument("need 0 < eps < t1");
  if (!(0 < vot_first && vot_first <= vot_second)) {
    throw std::invalid_argument("need 0 < vot_first <= vot_second");
  }
  AdversarialInstance inst;
  inst.network.arcs = {{t1, 1}, {t2, 1}};
  inst.sequence.vot_alphabet = {vot_first};
  if (vot_second > vot_first) inst.sequence.vot_alphabet.push_back(vot_second);
  // The second user lands while the first still occupies whichever arc it
  // took, so greedy fixes the inverted order; the optimum swaps the two.
  inst.sequence.users = {{0.0, vot_first}, {eps, vot_second}};
  inst.expected_ratio = vot_inversion_ratio(vot_first, vot_second, t1, t2);
  return inst;
}

double vot_inversion_ratio(double vot_first, double vot_second, double t1,
                           double t2) {
  return (vot_first * t1 + vot_second * t2) / (vot_second * t1 + vot_first * t2);
}

}  // namespace otr
