#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Parallel-arc routing network and arrival-sequence types shared by every
// module. Arcs are kept sorted by travel time; user arrivals are strictly
// increasing with the first arrival pinned at time 0. An arc occupied by a
// user at arrival time tau stays occupied for the closed interval
// [tau, tau + travel_time].

namespace otr {

struct Arc {
  double travel_time = 0.0;
  int capacity = 0;
};

struct NetworkSpec {
  std::vector<Arc> arcs;  // sorted by travel_time ascending

  int num_arcs() const { return static_cast<int>(arcs.size()); }
};

struct UserArrival {
  double arrival_time = 0.0;
  double vot = 1.0;  // value of time, drawn from the sequence's alphabet
};

struct InputSequence {
  std::vector<double> vot_alphabet;  // sorted ascending, distinct
  std::vector<UserArrival> users;    // arrival_time strictly increasing, users[0] at 0

  int num_users() const { return static_cast<int>(users.size()); }
};

// Piecewise-constant Poisson arrival rates plus a VOT distribution.
struct RateSegment {
  double start = 0.0;  // segment start; the last segment extends to +inf
  double rate = 1.0;
};

struct VotWeight {
  double vot = 1.0;
  double prob = 1.0;
};

struct ArrivalProfile {
  std::vector<VotWeight> vot_probs;       // sorted by vot ascending, probs sum to 1
  std::vector<RateSegment> rate_schedule; // starts strictly increasing, first at 0
};

struct ScenarioPreset {
  std::string name;
  NetworkSpec network;
  ArrivalProfile profile;
  int n_users = 0;
};

// Routing decision for a whole sequence. Integral assignments have exactly
// one unit entry per row; fractional rows are any point of the simplex.
struct Assignment {
  bool integral = true;
  std::vector<std::vector<double>> x;  // [user][arc]

  // Chosen arc of an integral assignment's row i.
  int arc_of(int i) const;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> issues;
};

// Structural checks on a network / sequence pair (or each alone).
ValidationReport validate(const NetworkSpec& net);
ValidationReport validate(const InputSequence& seq);
ValidationReport validate(const NetworkSpec& net, const InputSequence& seq);
ValidationReport validate(const ArrivalProfile& profile);

// Number of users in `assignment` occupying arc `a` at instant `t`,
// i.e. users routed to `a` with t in [tau_i, tau_i + travel_time(a)].
// Fractional assignments contribute their fractional mass.
double occupancy_count(const NetworkSpec& net, const InputSequence& seq,
                       const Assignment& assignment, int a, double t);

// Total travel cost sum_i vot_i * sum_a x_ia * travel_time_a.
double total_cost(const NetworkSpec& net, const InputSequence& seq,
                  const Assignment& assignment);

// Capacity breaches of an (integral) assignment: number of (arc, arrival
// instant) pairs where occupancy exceeds the arc capacity.
int capacity_breach_count(const NetworkSpec& net, const InputSequence& seq,
                          const Assignment& assignment);

// Built-in experiment scenarios. Names: highway, scenario1..scenario5.
const std::vector<ScenarioPreset>& presets();
const ScenarioPreset& preset_by_name(const std::string& name);  // throws std::out_of_range

}  // namespace otr
