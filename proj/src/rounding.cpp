#include "otr/rounding.hpp"

#include <cmath>
#include <stdexcept>

#include "otr/rng.hpp"

namespace otr {

int arc_for_uniform(const std::vector<double>& probs, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("u must lie in [0,1]");
  double total = 0;
  for (double p : probs) {
    if (p < -1e-9) throw std::domain_error("negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::domain_error("probabilities must sum to 1");

  const int M = static_cast<int>(probs.size());
  double cum = 0;
  int last_nonempty = 0;
  for (int a = 0; a < M; ++a) {
    const double next = cum + probs[a];
    if (probs[a] > 0) last_nonempty = a;
    if (u >= cum && u < next) return a;
    cum = next;
  }
  return last_nonempty;  // u == 1 (or at the top after rounding): closed last range
}

namespace {

template <typename ProbsFor>
Assignment route_impl(const NetworkSpec& net, const InputSequence& seq,
                      std::uint64_t seed, const ProbsFor& probs_of_user) {
  const int n = seq.num_users();
  Assignment out;
  out.integral = true;
  out.x.assign(n, std::vector<double>(net.num_arcs(), 0.0));
  for (int i = 0; i < n; ++i) {
    const double u = uniform01(derive_seed(seed, i));
    out.x[i][arc_for_uniform(probs_of_user(i), u)] = 1.0;
  }
  return out;
}

template <typename ProbsFor>
double expected_impl(const NetworkSpec& net, const InputSequence& seq,
                     const ProbsFor& probs_of_user) {
  double cost = 0;
  for (int i = 0; i < seq.num_users(); ++i) {
    const std::vector<double>& p = probs_of_user(i);
    for (int a = 0; a < net.num_arcs(); ++a) {
      cost += seq.users[i].vot * net.arcs[a].travel_time * p[a];
    }
  }
  return cost;
}

}  // namespace

Assignment route_online(const TiPolicy& policy, const NetworkSpec& net,
                        const InputSequence& seq, std::uint64_t seed) {
  return route_impl(net, seq, seed, [&](int i) -> const std::vector<double>& {
    return policy.probs_for(seq.users[i].vot);
  });
}

Assignment route_online(const TdPolicy& policy, const NetworkSpec& net,
                        const InputSequence& seq, std::uint64_t seed) {
  return route_impl(net, seq, seed, [&](int i) -> const std::vector<double>& {
    return policy.probs_for(seq.users[i].vot, seq.users[i].arrival_time);
  });
}

double expected_cost(const TiPolicy& policy, const NetworkSpec& net,
                     const InputSequence& seq) {
  return expected_impl(net, seq, [&](int i) -> const std::vector<double>& {
    return policy.probs_for(seq.users[i].vot);
  });
}

double expected_cost(const TdPolicy& policy, const NetworkSpec& net,
                     const InputSequence& seq) {
  return expected_impl(net, seq, [&](int i) -> const std::vector<double>& {
    return policy.probs_for(seq.users[i].vot, seq.users[i].arrival_time);
  });
}

}  // namespace otr
