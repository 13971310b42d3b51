#include "otr/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "otr/greedy.hpp"
#include "otr/learning.hpp"
#include "otr/offline.hpp"
#include "otr/rng.hpp"
#include "otr/rounding.hpp"
#include "otr/sampling.hpp"

namespace otr {

ExperimentConfig config_from_preset(const ScenarioPreset& preset) {
  ExperimentConfig cfg;
  cfg.name = preset.name;
  cfg.network = preset.network;
  cfg.profile = preset.profile;
  cfg.n_users = preset.n_users;
  for (const RateSegment& seg : preset.profile.rate_schedule) {
    cfg.td_boundaries.push_back(seg.start);
  }
  return cfg;
}

Histogram make_histogram(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("cannot bin zero values");
  constexpr int kBins = 11;
  const double lo = *std::min_element(values.begin(), values.end());
  const double hi = *std::max_element(values.begin(), values.end());
  const double span = hi - lo;
  const double width = span > 0 ? span / kBins : 1e-12;

  Histogram h;
  for (int j = 0; j <= kBins; ++j) h.edges.push_back(lo + width * j);
  h.counts.assign(kBins, 0);
  for (double v : values) {
    const int bin = std::min(kBins - 1, static_cast<int>((v - lo) / width));
    ++h.counts[std::max(0, bin)];
  }
  return h;
}

namespace {

struct DrawnScenario {
  std::uint64_t seed = 0;
  InputSequence sequence;
  OptResult opt;
};

// Draw until `count` scenarios with a feasible routing program are in hand;
// infeasible draws are discarded (counted) and the derived-seed counter keeps
// advancing, so the stream is reproducible regardless of the split into
// train/test.
std::vector<DrawnScenario> sample_feasible(const ExperimentConfig& cfg,
                                           std::uint64_t stream_seed,
                                           std::uint64_t& counter, int count,
                                           int& resamples) {
  constexpr int kMaxConsecutiveFailures = 1000;
  std::vector<DrawnScenario> out;
  int failures = 0;
  while (static_cast<int>(out.size()) < count) {
    DrawnScenario d;
    d.seed = derive_seed(stream_seed, counter++);
    d.sequence = sample_sequence(cfg.profile, cfg.n_users, d.seed);
    d.opt = opt_fractional(cfg.network, d.sequence);
    if (d.opt.status != OptResult::Status::Optimal) {
      ++resamples;
      if (++failures >= kMaxConsecutiveFailures) {
        throw std::runtime_error(
            "could not draw a feasible scenario after " +
            std::to_string(kMaxConsecutiveFailures) + " consecutive attempts");
      }
      continue;
    }
    failures = 0;
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg, int k_train,
                                int k_test, std::uint64_t master_seed,
                                double beta) {
  if (k_train < 1 || k_test < 1) throw std::invalid_argument("need k_train, k_test >= 1");
  ValidationReport rep = validate(cfg.network);
  if (!rep.ok) throw std::invalid_argument("invalid network: " + rep.issues.front());

  ExperimentReport report;
  report.scenario = cfg.name;
  report.k_train = k_train;
  report.k_test = k_test;
  report.n_users = cfg.n_users;
  report.master_seed = master_seed;
  report.beta = beta;

  // Independent derived streams: sequence draws, then one rounding stream
  // per policy kind.
  const std::uint64_t seq_stream = derive_seed(master_seed, 1);
  const std::uint64_t ti_stream = derive_seed(master_seed, 2);
  const std::uint64_t td_stream = derive_seed(master_seed, 3);

  std::uint64_t counter = 0;
  const std::vector<DrawnScenario> train =
      sample_feasible(cfg, seq_stream, counter, k_train, report.train_resamples);
  const std::vector<DrawnScenario> test =
      sample_feasible(cfg, seq_stream, counter, k_test, report.test_resamples);

  std::vector<TrainingScenario> training;
  for (const DrawnScenario& d : train) training.push_back({d.sequence, d.opt.value});

  bool ti_degenerate = false, td_degenerate = false;
  const TiPolicy ti = learn_ti(cfg.network, training, &ti_degenerate);
  const TdPolicy td = learn_td(cfg.network, training, cfg.td_boundaries, &td_degenerate);

  const int M = cfg.network.num_arcs();
  const int T = static_cast<int>(ti.theta.size());
  const int q = static_cast<int>(cfg.td_boundaries.size());

  report.ti.alpha_star = ti.alpha_star;
  report.ti.degenerate = ti_degenerate;
  report.ti.support_count = count_support_ti(cfg.network, training).count;
  report.ti.risk = risk_interval(k_train, report.ti.support_count, beta, T * (M - 1));

  report.td.alpha_star = td.alpha_star;
  report.td.degenerate = td_degenerate;
  report.td.support_count = count_support_td(cfg.network, training, cfg.td_boundaries).count;
  report.td.risk = risk_interval(k_train, report.td.support_count, beta, q * T * (M - 1));

  std::vector<double> greedy_ratios, ti_ratios, td_ratios;
  int ti_violations = 0, td_violations = 0;
  for (int idx = 0; idx < k_test; ++idx) {
    const DrawnScenario& d = test[idx];
    InstanceRecord rec;
    rec.index = idx;
    rec.seed = d.seed;
    rec.opt_value = d.opt.value;

    const Assignment g = greedy_route(cfg.network, d.sequence);
    rec.greedy_ratio = empirical_ratio(total_cost(cfg.network, d.sequence, g), d.opt.value);

    const Assignment ti_route =
        route_online(ti, cfg.network, d.sequence, derive_seed(ti_stream, idx));
    rec.ti_ratio =
        empirical_ratio(total_cost(cfg.network, d.sequence, ti_route), d.opt.value);
    rec.ti_capacity_breaches = capacity_breach_count(cfg.network, d.sequence, ti_route);
    rec.ti_expected_cost = expected_cost(ti, cfg.network, d.sequence);
    rec.ti_violated = violation_check(ti, cfg.network, d.sequence, d.opt.value).violated;

    const Assignment td_route =
        route_online(td, cfg.network, d.sequence, derive_seed(td_stream, idx));
    rec.td_ratio =
        empirical_ratio(total_cost(cfg.network, d.sequence, td_route), d.opt.value);
    rec.td_capacity_breaches = capacity_breach_count(cfg.network, d.sequence, td_route);
    rec.td_expected_cost = expected_cost(td, cfg.network, d.sequence);
    rec.td_violated = violation_check(td, cfg.network, d.sequence, d.opt.value).violated;

    ti_violations += rec.ti_violated ? 1 : 0;
    td_violations += rec.td_violated ? 1 : 0;
    greedy_ratios.push_back(rec.greedy_ratio);
    ti_ratios.push_back(rec.ti_ratio);
    td_ratios.push_back(rec.td_ratio);
    report.instances.push_back(rec);
  }

  report.ti.violation_fraction = static_cast<double>(ti_violations) / k_test;
  report.td.violation_fraction = static_cast<double>(td_violations) / k_test;

  auto mean = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  report.mean_greedy_ratio = mean(greedy_ratios);
  report.mean_ti_ratio = mean(ti_ratios);
  report.mean_td_ratio = mean(td_ratios);
  report.hist_greedy = make_histogram(greedy_ratios);
  report.hist_ti = make_histogram(ti_ratios);
  report.hist_td = make_histogram(td_ratios);
  return report;
}

}  // namespace otr
