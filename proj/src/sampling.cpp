#include "otr/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "otr/rng.hpp"

namespace otr {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over seed jumped by the golden-ratio increment.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

namespace {

double draw_vot(const ArrivalProfile& profile, Rng& rng) {
  const double u = rng.next_uniform();
  double cum = 0;
  for (const VotWeight& w : profile.vot_probs) {
    cum += w.prob;
    if (u < cum) return w.vot;
  }
  return profile.vot_probs.back().vot;
}

}  // namespace

InputSequence sample_sequence(const ArrivalProfile& profile, int n_users,
                              std::uint64_t seed) {
  ValidationReport rep = validate(profile);
  if (!rep.ok) throw std::invalid_argument("bad arrival profile: " + rep.issues.front());
  if (n_users < 1) throw std::invalid_argument("n_users must be >= 1");

  InputSequence seq;
  for (const VotWeight& w : profile.vot_probs) seq.vot_alphabet.push_back(w.vot);

  Rng rng(seed);
  const auto& sched = profile.rate_schedule;
  double clock = 0;
  size_t seg = 0;

  seq.users.push_back({0.0, draw_vot(profile, rng)});
  for (int i = 1; i < n_users; ++i) {
    double tau;
    for (;;) {
      const double gap = -std::log(rng.next_uniform()) / sched[seg].rate;
      const double candidate = clock + gap;
      if (seg + 1 < sched.size() && candidate >= sched[seg + 1].start) {
        // Crossed into the next rate segment: discard and redraw there.
        clock = sched[seg + 1].start;
        ++seg;
        continue;
      }
      tau = candidate;
      break;
    }
    if (tau <= seq.users.back().arrival_time) {
      throw std::logic_error("tied arrival times in sampled sequence");
    }
    clock = tau;
    seq.users.push_back({tau, draw_vot(profile, rng)});
  }
  return seq;
}

}  // namespace otr
