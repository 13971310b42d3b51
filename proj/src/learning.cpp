#include "otr/learning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace otr {

// ---- policy lookups ----

int interval_index(const std::vector<double>& boundaries, double tau) {
  if (boundaries.empty()) throw std::domain_error("no interval boundaries");
  if (tau < boundaries.front()) throw std::domain_error("time before the first interval");
  int j = 0;
  while (j + 1 < static_cast<int>(boundaries.size()) && tau >= boundaries[j + 1]) ++j;
  return j;
}

namespace {

int theta_index(const std::vector<double>& theta, double vot) {
  for (size_t t = 0; t < theta.size(); ++t) {
    if (theta[t] == vot) return static_cast<int>(t);
  }
  throw std::out_of_range("VOT not in the policy alphabet");
}

}  // namespace

const std::vector<double>& TiPolicy::probs_for(double vot) const {
  return probs.at(theta_index(theta, vot));
}

const std::vector<double>& TdPolicy::probs_for(double vot, double tau) const {
  return probs.at(interval_index(boundaries, tau)).at(theta_index(theta, vot));
}

// ---- scenario program assembly ----

namespace {

std::vector<double> common_alphabet(const std::vector<TrainingScenario>& training) {
  if (training.empty()) throw std::invalid_argument("no training scenarios");
  const std::vector<double>& alpha = training.front().sequence.vot_alphabet;
  for (const TrainingScenario& s : training) {
    if (s.sequence.vot_alphabet != alpha) {
      throw std::invalid_argument("training scenarios disagree on the VOT alphabet");
    }
    if (!(s.opt_value > 0)) {
      throw std::invalid_argument("training scenario optimum must be positive");
    }
  }
  return alpha;
}

// Shared builder; TD is TI with one probability table per interval
// (the TI case is q = 1 with a single all-covering interval).
ScenarioLp build_scenario_lp(const NetworkSpec& net,
                             const std::vector<TrainingScenario>& training,
                             const std::vector<double>& boundaries) {
  ValidationReport rep = validate(net);
  if (!rep.ok) throw std::invalid_argument("invalid network: " + rep.issues.front());
  const std::vector<double> theta = common_alphabet(training);
  const int T = static_cast<int>(theta.size());
  const int M = net.num_arcs();
  const int q = static_cast<int>(boundaries.size());
  const int P = q * T * M;

  ScenarioLp out;
  out.alpha_col = 0;
  out.num_prob_vars = P;
  LinearProgram& lp = out.lp;
  lp.objective.assign(1 + P, 0.0);
  lp.objective[0] = 1.0;  // minimize the ratio bound alpha

  auto col = [&](int j, int t, int a) { return 1 + (j * T + t) * M + a; };

  for (int j = 0; j < q; ++j) {  // probability simplex per (interval, type)
    for (int t = 0; t < T; ++t) {
      LpRow row;
      row.coeffs.assign(1 + P, 0.0);
      for (int a = 0; a < M; ++a) row.coeffs[col(j, t, a)] = 1.0;
      row.rel = Relation::EQ;
      row.rhs = 1.0;
      lp.rows.push_back(std::move(row));
      out.row_scenario.push_back(-1);
    }
  }

  for (int k = 0; k < static_cast<int>(training.size()); ++k) {
    const InputSequence& seq = training[k].sequence;
    const int n = seq.num_users();
    std::vector<int> t_of(n), j_of(n);
    for (int i = 0; i < n; ++i) {
      t_of[i] = theta_index(theta, seq.users[i].vot);
      j_of[i] = interval_index(boundaries, seq.users[i].arrival_time);
    }

    // Expected cost of this scenario must stay within alpha * OPT. The row is
    // divided through by OPT so its coefficients stay near unit scale; raw
    // cost sums run four orders of magnitude above the capacity rows, which
    // pushes the solver's absolute tolerances off balance.
    if (!(training[k].opt_value > 0.0)) {
      throw std::invalid_argument("training scenario optimum must be positive");
    }
    LpRow ratio;
    ratio.coeffs.assign(1 + P, 0.0);
    ratio.coeffs[0] = -1.0;
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < M; ++a) {
        ratio.coeffs[col(j_of[i], t_of[i], a)] +=
            seq.users[i].vot * net.arcs[a].travel_time / training[k].opt_value;
      }
    }
    ratio.rel = Relation::LE;
    ratio.rhs = 0.0;
    lp.rows.push_back(std::move(ratio));
    out.row_scenario.push_back(k);

    // Expected occupancy within capacity at every (arc, arrival instant).
    for (int a = 0; a < M; ++a) {
      const double ta = net.arcs[a].travel_time;
      for (int l = 0; l < n; ++l) {
        LpRow row;
        row.coeffs.assign(1 + P, 0.0);
        const double tl = seq.users[l].arrival_time;
        for (int i = 0; i <= l; ++i) {
          if (seq.users[i].arrival_time + ta >= tl) {
            row.coeffs[col(j_of[i], t_of[i], a)] += 1.0;
          }
        }
        row.rel = Relation::LE;
        row.rhs = net.arcs[a].capacity;
        lp.rows.push_back(std::move(row));
        out.row_scenario.push_back(k);
      }
    }
  }
  return out;
}

std::vector<double> cheap_arc_secondary(const ScenarioLp& slp, int M) {
  // Among cost-optimal policies prefer mass on cheaper arcs (lower index).
  std::vector<double> sec(slp.lp.num_vars(), 0.0);
  for (int c = 1; c <= slp.num_prob_vars; ++c) sec[c] = static_cast<double>((c - 1) % M);
  return sec;
}

struct SolvedScenario {
  double alpha = 0.0;
  std::vector<double> probs;  // flat, num_prob_vars long
};

SolvedScenario solve_scenario(const ScenarioLp& slp, int M, bool* degenerate) {
  const LpSolution sol =
      lexicographic_solve(slp.lp, cheap_arc_secondary(slp, M), degenerate);
  if (sol.status != LpStatus::Optimal) {
    throw std::runtime_error("scenario program did not solve to optimality");
  }
  SolvedScenario out;
  out.alpha = sol.objective;
  out.probs.assign(sol.x.begin() + 1, sol.x.begin() + 1 + slp.num_prob_vars);
  for (double& p : out.probs) p = std::clamp(p, 0.0, 1.0);
  return out;
}

const std::vector<double> kWholeLine = {0.0};  // single interval covering [0, inf)

}  // namespace

ScenarioLp build_ti_lp(const NetworkSpec& net,
                       const std::vector<TrainingScenario>& training) {
  return build_scenario_lp(net, training, kWholeLine);
}

ScenarioLp build_td_lp(const NetworkSpec& net,
                       const std::vector<TrainingScenario>& training,
                       const std::vector<double>& boundaries) {
  if (boundaries.empty() || boundaries.front() != 0.0) {
    throw std::invalid_argument("interval boundaries must start at 0");
  }
  for (size_t j = 1; j < boundaries.size(); ++j) {
    if (!(boundaries[j - 1] < boundaries[j])) {
      throw std::invalid_argument("interval boundaries must be strictly increasing");
    }
  }
  return build_scenario_lp(net, training, boundaries);
}

TiPolicy learn_ti(const NetworkSpec& net,
                  const std::vector<TrainingScenario>& training,
                  bool* degenerate) {
  const ScenarioLp slp = build_ti_lp(net, training);
  const int M = net.num_arcs();
  const SolvedScenario sol = solve_scenario(slp, M, degenerate);

  TiPolicy policy;
  policy.theta = training.front().sequence.vot_alphabet;
  policy.alpha_star = sol.alpha;
  const int T = static_cast<int>(policy.theta.size());
  policy.probs.assign(T, std::vector<double>(M, 0.0));
  for (int t = 0; t < T; ++t) {
    for (int a = 0; a < M; ++a) policy.probs[t][a] = sol.probs[t * M + a];
  }
  return policy;
}

TdPolicy learn_td(const NetworkSpec& net,
                  const std::vector<TrainingScenario>& training,
                  const std::vector<double>& boundaries,
                  bool* degenerate) {
  const ScenarioLp slp = build_td_lp(net, training, boundaries);
  const int M = net.num_arcs();
  const SolvedScenario sol = solve_scenario(slp, M, degenerate);

  TdPolicy policy;
  policy.theta = training.front().sequence.vot_alphabet;
  policy.boundaries = boundaries;
  policy.alpha_star = sol.alpha;
  const int T = static_cast<int>(policy.theta.size());
  const int q = static_cast<int>(boundaries.size());
  policy.probs.assign(q, std::vector<std::vector<double>>(T, std::vector<double>(M, 0.0)));
  for (int j = 0; j < q; ++j) {
    for (int t = 0; t < T; ++t) {
      for (int a = 0; a < M; ++a) policy.probs[j][t][a] = sol.probs[(j * T + t) * M + a];
    }
  }
  return policy;
}

namespace {

SupportInfo count_support(const ScenarioLp& slp, int M, int k_total) {
  const SolvedScenario full = solve_scenario(slp, M, nullptr);

  SupportInfo info;
  LinearProgram sub;
  sub.objective = slp.lp.objective;
  for (int k = 0; k < k_total; ++k) {
    sub.rows.clear();
    for (size_t r = 0; r < slp.lp.rows.size(); ++r) {
      if (slp.row_scenario[r] != k) sub.rows.push_back(slp.lp.rows[r]);
    }
    ScenarioLp sub_slp;
    sub_slp.lp = std::move(sub);
    sub_slp.num_prob_vars = slp.num_prob_vars;
    const SolvedScenario loo = solve_scenario(sub_slp, M, nullptr);
    sub = std::move(sub_slp.lp);

    bool moved = std::abs(loo.alpha - full.alpha) > 1e-7 * std::max(1.0, std::abs(full.alpha));
    for (size_t j = 0; !moved && j < full.probs.size(); ++j) {
      if (std::abs(loo.probs[j] - full.probs[j]) > 1e-7) moved = true;
    }
    if (moved) info.scenario_indices.push_back(k);
  }
  info.count = static_cast<int>(info.scenario_indices.size());
  return info;
}

}  // namespace

SupportInfo count_support_ti(const NetworkSpec& net,
                             const std::vector<TrainingScenario>& training) {
  return count_support(build_ti_lp(net, training), net.num_arcs(),
                       static_cast<int>(training.size()));
}

SupportInfo count_support_td(const NetworkSpec& net,
                             const std::vector<TrainingScenario>& training,
                             const std::vector<double>& boundaries) {
  return count_support(build_td_lp(net, training, boundaries), net.num_arcs(),
                       static_cast<int>(training.size()));
}

// ---- violation checks ----

namespace {

template <typename ProbsFor>
ViolationDetails check_impl(const NetworkSpec& net, const InputSequence& seq,
                            double opt_value, double alpha_star,
                            const ProbsFor& probs_of_user) {
  if (!(opt_value > 0)) throw std::invalid_argument("opt_value must be positive");
  const int n = seq.num_users();
  const int M = net.num_arcs();

  ViolationDetails det;
  double expected = 0;
  for (int i = 0; i < n; ++i) {
    const std::vector<double>& p = probs_of_user(i);
    for (int a = 0; a < M; ++a) {
      expected += seq.users[i].vot * net.arcs[a].travel_time * p[a];
    }
  }
  det.ratio = expected / opt_value;
  const double budget = alpha_star * opt_value;
  det.ratio_violated = expected > budget + 1e-9 * std::max(1.0, std::abs(budget));

  for (int a = 0; a < M; ++a) {
    const double ta = net.arcs[a].travel_time;
    for (int l = 0; l < n; ++l) {
      const double tl = seq.users[l].arrival_time;
      double load = 0;
      for (int i = 0; i <= l; ++i) {
        if (seq.users[i].arrival_time + ta >= tl) load += probs_of_user(i)[a];
      }
      if (load > net.arcs[a].capacity + 1e-9 * std::max(1.0, double(net.arcs[a].capacity))) {
        ++det.capacity_rows_violated;
      }
    }
  }
  det.violated = det.ratio_violated || det.capacity_rows_violated > 0;
  return det;
}

}  // namespace

ViolationDetails violation_check(const TiPolicy& policy, const NetworkSpec& net,
                                 const InputSequence& seq, double opt_value) {
  return check_impl(net, seq, opt_value, policy.alpha_star,
                    [&](int i) -> const std::vector<double>& {
                      return policy.probs_for(seq.users[i].vot);
                    });
}

ViolationDetails violation_check(const TdPolicy& policy, const NetworkSpec& net,
                                 const InputSequence& seq, double opt_value) {
  return check_impl(net, seq, opt_value, policy.alpha_star,
                    [&](int i) -> const std::vector<double>& {
                      return policy.probs_for(seq.users[i].vot,
                                              seq.users[i].arrival_time);
                    });
}

}  // namespace otr
