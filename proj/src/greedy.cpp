#include "otr/greedy.hpp"

#include <stdexcept>

namespace otr {

Assignment greedy_route(const NetworkSpec& net, const InputSequence& seq) {
  ValidationReport rep = validate(net, seq);
  if (!rep.ok) throw std::invalid_argument("invalid instance: " + rep.issues.front());

  const int n = seq.num_users();
  const int M = net.num_arcs();
  Assignment out;
  out.integral = true;
  out.x.assign(n, std::vector<double>(M, 0.0));

  std::vector<std::vector<double>> arrivals_on(M);  // arrival times routed per arc
  for (int i = 0; i < n; ++i) {
    const double tau = seq.users[i].arrival_time;
    int chosen = -1;
    for (int a = 0; a < M && chosen < 0; ++a) {
      const double ta = net.arcs[a].travel_time;
      int occ = 0;
      for (double t : arrivals_on[a]) {
        if (t + ta >= tau) ++occ;  // window [t, t + ta] still covers tau
      }
      if (occ < net.arcs[a].capacity) chosen = a;
    }
    if (chosen < 0) throw NoArcAvailable(i);
    out.x[i][chosen] = 1.0;
    arrivals_on[chosen].push_back(tau);
  }
  return out;
}

double empirical_ratio(double algorithm_cost, double opt_value) {
  if (opt_value <= 0) throw std::domain_error("optimum must be positive");
  return algorithm_cost / opt_value;
}

}  // namespace otr
