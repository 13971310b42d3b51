#include <doctest.h>

#include <set>
#include <stdexcept>

#include "otr/model.hpp"
#include "otr/rng.hpp"
#include "otr/sampling.hpp"

using namespace otr;

namespace {

NetworkSpec two_arcs() {
  NetworkSpec net;
  net.arcs = {{5.0, 1}, {10.0, 2}};
  return net;
}

InputSequence simple_seq() {
  InputSequence seq;
  seq.vot_alphabet = {1.0, 9.0};
  seq.users = {{0.0, 1.0}, {2.0, 9.0}};
  return seq;
}

}  // namespace

TEST_CASE("validation accepts a clean instance") {
  CHECK(validate(two_arcs(), simple_seq()).ok);
}

TEST_CASE("validation rejects structural defects") {
  NetworkSpec bad = two_arcs();
  bad.arcs[0].travel_time = 20.0;  // unsorted
  CHECK_FALSE(validate(bad).ok);

  bad = two_arcs();
  bad.arcs[1].capacity = 0;
  CHECK_FALSE(validate(bad).ok);

  NetworkSpec one;
  one.arcs = {{5.0, 1}};
  CHECK_FALSE(validate(one).ok);

  InputSequence seq = simple_seq();
  seq.users[0].arrival_time = 0.5;  // first arrival must be 0
  CHECK_FALSE(validate(seq).ok);

  seq = simple_seq();
  seq.users[1].arrival_time = 0.0;  // tie
  CHECK_FALSE(validate(seq).ok);

  seq = simple_seq();
  seq.users[1].vot = 7.0;  // not in alphabet
  CHECK_FALSE(validate(seq).ok);

  ArrivalProfile p;
  p.vot_probs = {{1.0, 0.6}, {9.0, 0.6}};
  p.rate_schedule = {{0.0, 1.0}};
  CHECK_FALSE(validate(p).ok);  // probabilities sum to 1.2
}

TEST_CASE("occupancy windows are closed at both ends") {
  const NetworkSpec net = two_arcs();
  InputSequence seq;
  seq.vot_alphabet = {1.0};
  seq.users = {{0.0, 1.0}, {5.0, 1.0}};
  Assignment a;
  a.integral = true;
  a.x = {{1.0, 0.0}, {0.0, 1.0}};

  CHECK(occupancy_count(net, seq, a, 0, 0.0) == 1.0);
  CHECK(occupancy_count(net, seq, a, 0, 5.0) == 1.0);   // still occupied at tau + t
  CHECK(occupancy_count(net, seq, a, 0, 5.0001) == 0.0);
  CHECK(occupancy_count(net, seq, a, 1, 5.0) == 1.0);
  CHECK(occupancy_count(net, seq, a, 1, 4.9999) == 0.0);  // not yet arrived
}

TEST_CASE("total cost and breach counting") {
  const NetworkSpec net = two_arcs();
  InputSequence seq;
  seq.vot_alphabet = {1.0, 9.0};
  seq.users = {{0.0, 9.0}, {1.0, 1.0}, {2.0, 1.0}};
  Assignment a;
  a.integral = true;
  a.x = {{1, 0}, {1, 0}, {0, 1}};
  CHECK(total_cost(net, seq, a) == doctest::Approx(9 * 5 + 1 * 5 + 1 * 10).epsilon(1e-12));

  // Arc 0 holds two overlapping users but capacity is 1: breach at both
  // covered arrival instants.
  CHECK(capacity_breach_count(net, seq, a) == 2);
  a.x = {{1, 0}, {0, 1}, {0, 1}};
  CHECK(capacity_breach_count(net, seq, a) == 0);  // arc 1 has capacity 2
}

TEST_CASE("arc_of rejects fractional rows") {
  Assignment a;
  a.integral = true;
  a.x = {{0.5, 0.5}};
  CHECK_THROWS_AS(a.arc_of(0), std::logic_error);
}

TEST_CASE("built-in scenarios") {
  CHECK(presets().size() == 6);
  const ScenarioPreset& hw = preset_by_name("highway");
  REQUIRE(hw.network.arcs.size() == 3);
  CHECK(hw.network.arcs[0].travel_time == 20.0);
  CHECK(hw.network.arcs[0].capacity == 20);
  CHECK(hw.network.arcs[1].travel_time == 24.0);
  CHECK(hw.network.arcs[1].capacity == 24);
  CHECK(hw.network.arcs[2].travel_time == 130.0);
  CHECK(hw.network.arcs[2].capacity == 100);
  CHECK(hw.n_users == 120);
  REQUIRE(hw.profile.vot_probs.size() == 3);
  CHECK(hw.profile.vot_probs[0].vot == 1.0);
  CHECK(hw.profile.vot_probs[0].prob == doctest::Approx(0.32));
  CHECK(hw.profile.vot_probs[1].vot == 9.0);
  CHECK(hw.profile.vot_probs[1].prob == doctest::Approx(0.39));
  CHECK(hw.profile.vot_probs[2].vot == 20.0);
  CHECK(hw.profile.vot_probs[2].prob == doctest::Approx(0.29));
  REQUIRE(hw.profile.rate_schedule.size() == 5);
  CHECK(hw.profile.rate_schedule[0].start == 0.0);
  CHECK(hw.profile.rate_schedule[4].start == 56.0);
  CHECK(hw.profile.rate_schedule[0].rate == doctest::Approx(1.2));
  CHECK(hw.profile.rate_schedule[3].rate == doctest::Approx(2.5));
  CHECK(preset_by_name("scenario2").profile.rate_schedule[1].rate == doctest::Approx(2.5));
  CHECK_THROWS_AS(preset_by_name("nope"), std::out_of_range);
  for (const ScenarioPreset& p : presets()) {
    CHECK(validate(p.network).ok);
    CHECK(validate(p.profile).ok);
  }
}

TEST_CASE("derived seeds split into unrelated streams") {
  CHECK(derive_seed(0, 0) == derive_seed(0, 0));
  CHECK(derive_seed(0, 0) != derive_seed(0, 1));
  CHECK(derive_seed(0, 0) != derive_seed(1, 0));
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
  CHECK(seen.size() == 1000);
  for (int i = 0; i < 100; ++i) {
    const double u = uniform01(derive_seed(7, i));
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("sampled sequences are valid and reproducible") {
  const ScenarioPreset& hw = preset_by_name("highway");
  const InputSequence a = sample_sequence(hw.profile, 120, 7);
  const InputSequence b = sample_sequence(hw.profile, 120, 7);
  const InputSequence c = sample_sequence(hw.profile, 120, 8);

  CHECK(a.num_users() == 120);
  CHECK(validate(hw.network, a).ok);
  REQUIRE(a.users.size() == b.users.size());
  for (size_t i = 0; i < a.users.size(); ++i) {
    CHECK(a.users[i].arrival_time == b.users[i].arrival_time);
    CHECK(a.users[i].vot == b.users[i].vot);
  }
  bool differs = false;
  for (size_t i = 0; i < a.users.size(); ++i) {
    if (a.users[i].arrival_time != c.users[i].arrival_time) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("sampling follows the piecewise rates") {
  ArrivalProfile p;
  p.vot_probs = {{1.0, 1.0}};
  p.rate_schedule = {{0.0, 2.0}};
  // Constant rate 2: mean gap 0.5.
  const InputSequence seq = sample_sequence(p, 4000, 123);
  const double span = seq.users.back().arrival_time;
  CHECK(span / 3999.0 == doctest::Approx(0.5).epsilon(0.05));

  // Rate jump at t=10: arrivals become ~100x denser afterwards.
  ArrivalProfile p2;
  p2.vot_probs = {{1.0, 1.0}};
  p2.rate_schedule = {{0.0, 1.0}, {10.0, 100.0}};
  const InputSequence seq2 = sample_sequence(p2, 2000, 5);
  int before = 0;
  for (const UserArrival& u : seq2.users) {
    if (u.arrival_time < 10.0) ++before;
  }
  CHECK(before < 30);  // roughly 10 expected before the jump
  CHECK(seq2.users.back().arrival_time < 40.0);

  // VOT marginals.
  ArrivalProfile p3;
  p3.vot_probs = {{1.0, 0.32}, {9.0, 0.39}, {20.0, 0.29}};
  p3.rate_schedule = {{0.0, 2.0}};
  const InputSequence seq3 = sample_sequence(p3, 6000, 99);
  int n1 = 0, n9 = 0, n20 = 0;
  for (const UserArrival& u : seq3.users) {
    if (u.vot == 1.0) ++n1;
    else if (u.vot == 9.0) ++n9;
    else ++n20;
  }
  CHECK(n1 / 6000.0 == doctest::Approx(0.32).epsilon(0.06));
  CHECK(n9 / 6000.0 == doctest::Approx(0.39).epsilon(0.06));
  CHECK(n20 / 6000.0 == doctest::Approx(0.29).epsilon(0.06));
}

TEST_CASE("sampling rejects bad inputs") {
  ArrivalProfile p;
  p.vot_probs = {{1.0, 1.0}};
  p.rate_schedule = {{0.0, 2.0}};
  CHECK_THROWS_AS(sample_sequence(p, 0, 1), std::invalid_argument);
  p.rate_schedule.clear();
  CHECK_THROWS_AS(sample_sequence(p, 5, 1), std::invalid_argument);
}
