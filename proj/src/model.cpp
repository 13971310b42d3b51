#include "otr/model.hpp"

#include <cmath>
#include <stdexcept>

namespace otr {

namespace {

bool is_unit_row(const std::vector<double>& row) {
  int ones = 0;
  for (double v : row) {
    if (v == 1.0) {
      ++ones;
    } else if (v != 0.0) {
      return false;
    }
  }
  return ones == 1;
}

void check(ValidationReport& rep, bool cond, const std::string& msg) {
  if (!cond) {
    rep.ok = false;
    rep.issues.push_back(msg);
  }
}

}  // namespace

int Assignment::arc_of(int i) const {
  const auto& row = x.at(i);
  for (int a = 0; a < static_cast<int>(row.size()); ++a) {
    if (row[a] == 1.0) return a;
  }
  throw std::logic_error("assignment row " + std::to_string(i) + " is not integral");
}

ValidationReport validate(const NetworkSpec& net) {
  ValidationReport rep;
  check(rep, net.num_arcs() >= 2, "need at least two arcs");
  for (int a = 0; a < net.num_arcs(); ++a) {
    const Arc& arc = net.arcs[a];
    check(rep, arc.travel_time > 0 && std::isfinite(arc.travel_time),
          "arc " + std::to_string(a) + ": travel time must be positive and finite");
    check(rep, arc.capacity >= 1,
          "arc " + std::to_string(a) + ": capacity must be at least 1");
    if (a > 0) {
      check(rep, net.arcs[a - 1].travel_time <= arc.travel_time,
            "arcs must be sorted by travel time");
    }
  }
  return rep;
}

ValidationReport validate(const InputSequence& seq) {
  ValidationReport rep;
  check(rep, !seq.users.empty(), "sequence has no users");
  check(rep, !seq.vot_alphabet.empty(), "empty VOT alphabet");
  for (size_t i = 1; i < seq.vot_alphabet.size(); ++i) {
    check(rep, seq.vot_alphabet[i - 1] < seq.vot_alphabet[i],
          "VOT alphabet must be strictly ascending");
  }
  for (double v : seq.vot_alphabet) {
    check(rep, v > 0 && std::isfinite(v), "VOT values must be positive and finite");
  }
  if (!seq.users.empty()) {
    check(rep, seq.users[0].arrival_time == 0.0, "first arrival must be at time 0");
  }
  for (int i = 0; i < seq.num_users(); ++i) {
    const UserArrival& u = seq.users[i];
    check(rep, std::isfinite(u.arrival_time) && u.arrival_time >= 0,
          "user " + std::to_string(i) + ": bad arrival time");
    if (i > 0) {
      check(rep, seq.users[i - 1].arrival_time < u.arrival_time,
            "arrival times must be strictly increasing (user " + std::to_string(i) + ")");
    }
    bool in_alphabet = false;
    for (double v : seq.vot_alphabet) {
      if (v == u.vot) in_alphabet = true;
    }
    check(rep, in_alphabet,
          "user " + std::to_string(i) + ": VOT not in the alphabet");
  }
  return rep;
}

ValidationReport validate(const NetworkSpec& net, const InputSequence& seq) {
  ValidationReport rep = validate(net);
  ValidationReport s = validate(seq);
  rep.ok = rep.ok && s.ok;
  rep.issues.insert(rep.issues.end(), s.issues.begin(), s.issues.end());
  return rep;
}

ValidationReport validate(const ArrivalProfile& profile) {
  ValidationReport rep;
  check(rep, !profile.vot_probs.empty(), "empty VOT distribution");
  double total = 0;
  for (size_t i = 0; i < profile.vot_probs.size(); ++i) {
    const VotWeight& w = profile.vot_probs[i];
    check(rep, w.vot > 0 && std::isfinite(w.vot), "VOT values must be positive");
    check(rep, w.prob >= 0 && w.prob <= 1, "VOT probabilities must lie in [0,1]");
    if (i > 0) {
      check(rep, profile.vot_probs[i - 1].vot < w.vot,
            "VOT support must be strictly ascending");
    }
    total += w.prob;
  }
  check(rep, std::abs(total - 1.0) <= 1e-9, "VOT probabilities must sum to 1");
  check(rep, !profile.rate_schedule.empty(), "empty rate schedule");
  for (size_t i = 0; i < profile.rate_schedule.size(); ++i) {
    const RateSegment& seg = profile.rate_schedule[i];
    check(rep, seg.rate > 0 && std::isfinite(seg.rate), "rates must be positive");
    if (i == 0) {
      check(rep, seg.start == 0.0, "first rate segment must start at 0");
    } else {
      check(rep, profile.rate_schedule[i - 1].start < seg.start,
            "segment starts must be strictly increasing");
    }
  }
  return rep;
}

double occupancy_count(const NetworkSpec& net, const InputSequence& seq,
                       const Assignment& assignment, int a, double t) {
  if (a < 0 || a >= net.num_arcs()) throw std::out_of_range("arc index");
  const double ta = net.arcs[a].travel_time;
  double total = 0;
  for (int i = 0; i < seq.num_users(); ++i) {
    const double tau = seq.users[i].arrival_time;
    if (tau <= t && t <= tau + ta) total += assignment.x[i][a];
  }
  return total;
}

double total_cost(const NetworkSpec& net, const InputSequence& seq,
                  const Assignment& assignment) {
  double cost = 0;
  for (int i = 0; i < seq.num_users(); ++i) {
    for (int a = 0; a < net.num_arcs(); ++a) {
      cost += assignment.x[i][a] * net.arcs[a].travel_time * seq.users[i].vot;
    }
  }
  return cost;
}

int capacity_breach_count(const NetworkSpec& net, const InputSequence& seq,
                          const Assignment& assignment) {
  if (assignment.integral) {
    for (const auto& row : assignment.x) {
      if (!is_unit_row(row)) throw std::logic_error("non-integral row in integral assignment");
    }
  }
  int breaches = 0;
  for (int a = 0; a < net.num_arcs(); ++a) {
    for (int k = 0; k < seq.num_users(); ++k) {
      const double occ = occupancy_count(net, seq, assignment, a, seq.users[k].arrival_time);
      if (occ > net.arcs[a].capacity + 1e-9) ++breaches;
    }
  }
  return breaches;
}

namespace {

ScenarioPreset make_preset(const std::string& name, std::vector<double> rates) {
  ScenarioPreset p;
  p.name = name;
  p.network.arcs = {{20.0, 20}, {24.0, 24}, {130.0, 100}};
  p.profile.vot_probs = {{1.0, 0.32}, {9.0, 0.39}, {20.0, 0.29}};
  const double width = 14.0;
  for (size_t j = 0; j < rates.size(); ++j) {
    p.profile.rate_schedule.push_back({width * static_cast<double>(j), rates[j]});
  }
  p.n_users = 120;
  return p;
}

}  // namespace

const std::vector<ScenarioPreset>& presets() {
  static const std::vector<ScenarioPreset> all = {
      make_preset("highway", {1.2, 2.0, 2.25, 2.5, 2.25}),
      make_preset("scenario1", {2.0, 2.0, 2.0, 2.0, 2.0}),
      make_preset("scenario2", {2.0, 2.5, 2.0, 2.5, 2.0}),
      make_preset("scenario3", {2.0, 2.25, 2.0, 2.25, 2.0}),
      make_preset("scenario4", {2.0, 2.25, 2.0, 2.5, 2.0}),
      make_preset("scenario5", {2.0, 2.5, 2.0, 2.25, 2.0}),
  };
  return all;
}

const ScenarioPreset& preset_by_name(const std::string& name) {
  for (const ScenarioPreset& p : presets()) {
    if (p.name == name) return p;
  }
  throw std::out_of_range("unknown preset: " + name);
}

}  // namespace otr
