#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otr/model.hpp"
#include "otr/policy.hpp"
#include "otr/risk.hpp"

// End-to-end reproducible pipeline: sample training scenarios (resampling
// any whose routing program is infeasible), learn both policies, count
// support constraints, certify risk intervals, then score greedy and both
// policies on fresh test scenarios. Every random draw derives from the
// master seed, so reports are byte-identical across runs.

namespace otr {

struct ExperimentConfig {
  std::string name;
  NetworkSpec network;
  ArrivalProfile profile;
  int n_users = 0;
  std::vector<double> td_boundaries;  // intervals for the time-dependent policy
};

ExperimentConfig config_from_preset(const ScenarioPreset& preset);

struct InstanceRecord {
  int index = 0;
  std::uint64_t seed = 0;
  bool infeasible = false;  // always false in reports: infeasible draws are resampled out
  double opt_value = 0.0;
  double greedy_ratio = 0.0;
  double ti_ratio = 0.0;  // randomized-rounding cost / opt
  double td_ratio = 0.0;
  double ti_expected_cost = 0.0;
  double td_expected_cost = 0.0;
  bool ti_violated = false;  // scenario constraint check at the learned alpha
  bool td_violated = false;
  int ti_capacity_breaches = 0;  // realized breaches of the rounded routing
  int td_capacity_breaches = 0;
};

struct Histogram {
  std::vector<double> edges;  // 12 edges spanning [min, max]
  std::vector<int> counts;    // 11 equal-width bins
};

struct PolicySummary {
  double alpha_star = 0.0;
  int support_count = 0;
  RiskInterval risk;
  double violation_fraction = 0.0;
  bool degenerate = false;
};

struct ExperimentReport {
  std::string scenario;
  int k_train = 0;
  int k_test = 0;
  int n_users = 0;
  std::uint64_t master_seed = 0;
  double beta = 0.0;
  int train_resamples = 0;
  int test_resamples = 0;
  PolicySummary ti;
  PolicySummary td;
  std::vector<InstanceRecord> instances;
  double mean_greedy_ratio = 0.0;
  double mean_ti_ratio = 0.0;
  double mean_td_ratio = 0.0;
  Histogram hist_greedy;
  Histogram hist_ti;
  Histogram hist_td;
};

ExperimentReport run_experiment(const ExperimentConfig& config, int k_train,
                                int k_test, std::uint64_t master_seed,
                                double beta = 1e-6);

// Histogram over `values` with 11 equal-width bins on [min, max].
Histogram make_histogram(const std::vector<double>& values);

}  // namespace otr
