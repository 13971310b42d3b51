#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "otr/experiment.hpp"
#include "otr/json_io.hpp"

using namespace otr;

namespace {

// Two arcs, two values, light but bursty traffic: small enough that a full
// train/test run takes well under a second, busy enough that the learned
// tables are not all point masses. Capacities are roomier than per-user
// routing needs because the shared per-class tables must cover every training
// draw at once; tighter caps make the training program itself infeasible.
ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.name = "tiny";
  cfg.network.arcs = {{3.0, 4}, {6.0, 6}};
  cfg.profile.vot_probs = {{1.0, 0.6}, {4.0, 0.4}};
  cfg.profile.rate_schedule = {{0.0, 0.7}, {4.0, 1.4}};
  cfg.n_users = 10;
  cfg.td_boundaries = {0.0, 4.0};
  return cfg;
}

}  // namespace

TEST_CASE("make_histogram: frozen bin layout") {
  const Histogram h = make_histogram({0.0, 1.0, 1.0, 10.99, 11.0});
  REQUIRE(h.edges.size() == 12);
  REQUIRE(h.counts.size() == 11);
  CHECK(h.edges.front() == doctest::Approx(0.0));
  CHECK(h.edges.back() == doctest::Approx(11.0));
  CHECK(h.edges[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(h.counts[0] == 1);   // 0.0
  CHECK(h.counts[1] == 2);   // the two 1.0s land past the first edge
  CHECK(h.counts[10] == 2);  // 10.99 and the max itself
  int total = 0;
  for (int c : h.counts) total += c;
  CHECK(total == 5);
}

TEST_CASE("make_histogram: all-equal values collapse to one bin") {
  const Histogram h = make_histogram({2.5, 2.5, 2.5});
  CHECK(h.counts[0] == 3);
  for (int b = 1; b < 11; ++b) CHECK(h.counts[b] == 0);
  CHECK(h.edges.back() > h.edges.front());  // degenerate width is padded
}

TEST_CASE("config_from_preset copies the rate-segment starts as boundaries") {
  const ExperimentConfig cfg = config_from_preset(preset_by_name("highway"));
  CHECK(cfg.name == "highway");
  CHECK(cfg.n_users == 120);
  REQUIRE(cfg.td_boundaries.size() == 5);
  const std::vector<double> want{0.0, 14.0, 28.0, 42.0, 56.0};
  for (int j = 0; j < 5; ++j) CHECK(cfg.td_boundaries[j] == doctest::Approx(want[j]));
}

TEST_CASE("run_experiment: small end-to-end run populates every field") {
  const ExperimentConfig cfg = tiny_config();
  const int k_train = 8, k_test = 6;
  const ExperimentReport rep = run_experiment(cfg, k_train, k_test, 12345);

  CHECK(rep.scenario == "tiny");
  CHECK(rep.k_train == k_train);
  CHECK(rep.k_test == k_test);
  CHECK(rep.n_users == 10);
  CHECK(rep.master_seed == 12345);
  CHECK(rep.beta == doctest::Approx(1e-6));
  CHECK(rep.train_resamples >= 0);
  CHECK(rep.test_resamples >= 0);
  REQUIRE(static_cast<int>(rep.instances.size()) == k_test);

  // Learned guarantees: alpha is a worst-case ratio over training, so >= 1.
  CHECK(rep.ti.alpha_star >= 1.0 - 1e-9);
  CHECK(rep.td.alpha_star >= 1.0 - 1e-9);
  CHECK(rep.td.alpha_star <= rep.ti.alpha_star + 1e-9);
  CHECK(rep.ti.support_count >= 0);
  CHECK(rep.ti.support_count <= k_train);
  CHECK(rep.ti.risk.sample_count == k_train);
  CHECK(rep.ti.risk.eps_lower >= 0.0);
  CHECK(rep.ti.risk.eps_upper <= 1.0);
  CHECK(rep.ti.risk.eps_lower <= rep.ti.risk.eps_upper);
  CHECK(rep.td.risk.sample_count == k_train);
  CHECK(rep.ti.violation_fraction >= 0.0);
  CHECK(rep.ti.violation_fraction <= 1.0);
  CHECK(rep.td.violation_fraction >= 0.0);
  CHECK(rep.td.violation_fraction <= 1.0);

  double mean_greedy = 0.0;
  for (const InstanceRecord& r : rep.instances) {
    CHECK_FALSE(r.infeasible);
    CHECK(r.opt_value > 0.0);
    CHECK(r.greedy_ratio >= 1.0 - 1e-7);  // greedy respects capacities, opt is fractional
    CHECK(r.ti_ratio > 0.0);
    CHECK(r.td_ratio > 0.0);
    CHECK(r.ti_expected_cost > 0.0);
    CHECK(r.td_expected_cost > 0.0);
    CHECK(r.ti_capacity_breaches >= 0);
    CHECK(r.td_capacity_breaches >= 0);
    mean_greedy += r.greedy_ratio;
  }
  mean_greedy /= k_test;
  CHECK(rep.mean_greedy_ratio == doctest::Approx(mean_greedy).epsilon(1e-12));

  REQUIRE(rep.hist_greedy.counts.size() == 11);
  int total = 0;
  for (int c : rep.hist_greedy.counts) total += c;
  CHECK(total == k_test);
}

TEST_CASE("run_experiment: byte-identical serialization across repeat runs") {
  const ExperimentConfig cfg = tiny_config();
  const ExperimentReport a = run_experiment(cfg, 6, 5, 777);
  const ExperimentReport b = run_experiment(cfg, 6, 5, 777);
  const ExperimentReport c = run_experiment(cfg, 6, 5, 778);

  const Json ja = to_json(a);
  const Json jb = to_json(b);
  const Json jc = to_json(c);
  CHECK(ja.dump(2) == jb.dump(2));
  CHECK(ja.dump(2) != jc.dump(2));
}

TEST_CASE("run_experiment: hopeless capacity is reported, not spun on") {
  // Two slots total, five users in a burst: no draw is ever feasible, so the
  // resample guard must trip instead of looping forever.
  ExperimentConfig cfg;
  cfg.name = "hopeless";
  cfg.network.arcs = {{5.0, 1}, {6.0, 1}};
  cfg.profile.vot_probs = {{1.0, 1.0}};
  cfg.profile.rate_schedule = {{0.0, 100.0}};
  cfg.n_users = 5;
  cfg.td_boundaries = {0.0};
  CHECK_THROWS_AS(run_experiment(cfg, 3, 3, 1), std::runtime_error);
}

TEST_CASE("run_experiment: argument guards") {
  const ExperimentConfig cfg = tiny_config();
  CHECK_THROWS_AS(run_experiment(cfg, 0, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_experiment(cfg, 3, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_experiment(cfg, 3, 3, 1, 0.0), std::invalid_argument);
  // Sample count must exceed the policy dimension for the risk certificate.
  CHECK_THROWS_AS(run_experiment(cfg, 1, 3, 1), std::invalid_argument);
}
