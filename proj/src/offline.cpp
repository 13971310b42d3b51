#include "otr/offline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace otr {

namespace {

constexpr int kBruteForceLimit = 12;

// Users whose occupancy window on arc `a` covers the arrival instant of
// user k, i.e. tau_i <= tau_k <= tau_i + t_a. Arrivals are sorted, so only
// i <= k qualify.
std::vector<int> covering_users(const NetworkSpec& net, const InputSequence& seq,
                                int a, int k) {
  std::vector<int> ids;
  const double ta = net.arcs[a].travel_time;
  const double tk = seq.users[k].arrival_time;
  for (int i = 0; i <= k; ++i) {
    if (seq.users[i].arrival_time + ta >= tk) ids.push_back(i);
  }
  return ids;
}

void require_valid(const NetworkSpec& net, const InputSequence& seq) {
  ValidationReport rep = validate(net, seq);
  if (!rep.ok) throw std::invalid_argument("invalid instance: " + rep.issues.front());
}

}  // namespace

LinearProgram build_fractional_lp(const NetworkSpec& net, const InputSequence& seq) {
  require_valid(net, seq);
  const int n = seq.num_users();
  const int M = net.num_arcs();

  LinearProgram lp;
  lp.objective.assign(static_cast<size_t>(n) * M, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < M; ++a) {
      lp.objective[static_cast<size_t>(i) * M + a] =
          seq.users[i].vot * net.arcs[a].travel_time;
    }
  }

  for (int i = 0; i < n; ++i) {  // each user fully routed
    LpRow row;
    row.coeffs.assign(static_cast<size_t>(n) * M, 0.0);
    for (int a = 0; a < M; ++a) row.coeffs[static_cast<size_t>(i) * M + a] = 1.0;
    row.rel = Relation::EQ;
    row.rhs = 1.0;
    lp.rows.push_back(std::move(row));
  }

  for (int a = 0; a < M; ++a) {  // capacity at every arrival instant
    for (int k = 0; k < n; ++k) {
      LpRow row;
      row.coeffs.assign(static_cast<size_t>(n) * M, 0.0);
      for (int i : covering_users(net, seq, a, k)) {
        row.coeffs[static_cast<size_t>(i) * M + a] = 1.0;
      }
      row.rel = Relation::LE;
      row.rhs = net.arcs[a].capacity;
      lp.rows.push_back(std::move(row));
    }
  }
  return lp;
}

OptResult opt_fractional(const NetworkSpec& net, const InputSequence& seq) {
  const LinearProgram lp = build_fractional_lp(net, seq);
  const LpSolution s = solve(lp);

  OptResult res;
  if (s.status == LpStatus::Infeasible) {
    res.status = OptResult::Status::Infeasible;
    return res;
  }
  if (s.status != LpStatus::Optimal) {
    throw std::runtime_error("routing relaxation did not solve to optimality");
  }
  const int n = seq.num_users();
  const int M = net.num_arcs();
  res.status = OptResult::Status::Optimal;
  res.assignment.integral = false;
  res.assignment.x.assign(n, std::vector<double>(M, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < M; ++a) {
      res.assignment.x[i][a] = std::clamp(s.x[static_cast<size_t>(i) * M + a], 0.0, 1.0);
    }
  }
  res.value = total_cost(net, seq, res.assignment);
  return res;
}

namespace {

struct SearchState {
  const NetworkSpec& net;
  const InputSequence& seq;
  std::vector<int> choice;
  // occupancy[a] holds indices of users routed to arc a (arrival order).
  std::vector<std::vector<int>> on_arc;

  bool fits(int k, int a) const {
    // Capacity need only be rechecked at the new user's arrival instant:
    // earlier instants are untouched and later ones are checked later.
    const double tk = seq.users[k].arrival_time;
    const double ta = net.arcs[a].travel_time;
    int count = 1;  // user k itself
    for (int i : on_arc[a]) {
      if (seq.users[i].arrival_time + ta >= tk) ++count;
    }
    return count <= net.arcs[a].capacity;
  }
};

template <typename Visit>
void dfs_assignments(SearchState& st, int k, const Visit& visit) {
  const int n = st.seq.num_users();
  if (k == n) {
    visit(st.choice);
    return;
  }
  for (int a = 0; a < st.net.num_arcs(); ++a) {
    if (!st.fits(k, a)) continue;
    st.choice[k] = a;
    st.on_arc[a].push_back(k);
    dfs_assignments(st, k + 1, visit);
    st.on_arc[a].pop_back();
  }
}

void guard_size(const InputSequence& seq) {
  if (seq.num_users() > kBruteForceLimit) {
    throw std::invalid_argument("exhaustive search limited to " +
                                std::to_string(kBruteForceLimit) + " users");
  }
}

}  // namespace

void for_each_feasible_assignment(const NetworkSpec& net, const InputSequence& seq,
                                  const std::function<void(const std::vector<int>&)>& fn) {
  require_valid(net, seq);
  guard_size(seq);
  SearchState st{net, seq, std::vector<int>(seq.num_users(), -1),
                 std::vector<std::vector<int>>(net.num_arcs())};
  dfs_assignments(st, 0, fn);
}

OptResult opt_integral_bruteforce(const NetworkSpec& net, const InputSequence& seq) {
  require_valid(net, seq);
  guard_size(seq);
  const int n = seq.num_users();
  const int M = net.num_arcs();

  // Pruned DFS in arrival order; bound = cheapest arc for every user left.
  std::vector<double> best_rate(n);
  for (int i = 0; i < n; ++i) best_rate[i] = seq.users[i].vot * net.arcs[0].travel_time;
  std::vector<double> tail(n + 1, 0.0);
  for (int i = n - 1; i >= 0; --i) tail[i] = tail[i + 1] + best_rate[i];

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_choice;
  SearchState st{net, seq, std::vector<int>(n, -1), std::vector<std::vector<int>>(M)};

  std::function<void(int, double)> go = [&](int k, double cost) {
    if (cost + tail[k] >= best) return;
    if (k == n) {
      best = cost;
      best_choice = st.choice;
      return;
    }
    for (int a = 0; a < M; ++a) {
      if (!st.fits(k, a)) continue;
      st.choice[k] = a;
      st.on_arc[a].push_back(k);
      go(k + 1, cost + seq.users[k].vot * net.arcs[a].travel_time);
      st.on_arc[a].pop_back();
    }
  };
  go(0, 0.0);

  OptResult res;
  if (best_choice.empty()) {
    res.status = OptResult::Status::Infeasible;
    return res;
  }
  res.status = OptResult::Status::Optimal;
  res.assignment.integral = true;
  res.assignment.x.assign(n, std::vector<double>(M, 0.0));
  for (int i = 0; i < n; ++i) res.assignment.x[i][best_choice[i]] = 1.0;
  res.value = total_cost(net, seq, res.assignment);
  return res;
}

}  // namespace otr
