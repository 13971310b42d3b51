#include "otr/risk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace otr {

namespace {

double log_choose(int n, int r) {
  return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

// The defining polynomial evaluated in log space at t = e^u as
// phi(u) = log(positive term) - log(negative terms); its sign matches the
// polynomial's. phi is concave in u (linear minus log-sum-exp), so it has a
// single peak and at most two roots.
struct LogPoly {
  double pos_const = 0, pos_slope = 0;   // log C(K,s) + (K-s) u
  std::vector<double> neg_const, neg_slope;

  double operator()(double u) const {
    const double pos = pos_const + pos_slope * u;
    double mx = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < neg_const.size(); ++i) {
      mx = std::max(mx, neg_const[i] + neg_slope[i] * u);
    }
    if (mx == -std::numeric_limits<double>::infinity()) return pos;  // no negative part
    double sum = 0;
    for (size_t i = 0; i < neg_const.size(); ++i) {
      sum += std::exp(neg_const[i] + neg_slope[i] * u - mx);
    }
    return pos - (mx + std::log(sum));
  }
};

LogPoly make_poly(int K, int s, double beta) {
  LogPoly p;
  p.pos_const = log_choose(K, s);
  p.pos_slope = K - s;
  for (int i = s; i <= K - 1; ++i) {
    p.neg_const.push_back(std::log(beta / 2) + log_choose(i, s));
    p.neg_slope.push_back(i - s);
  }
  for (int i = K + 1; i <= 4 * K; ++i) {
    p.neg_const.push_back(std::log(beta / 6) + log_choose(i, s));
    p.neg_slope.push_back(i - s);
  }
  return p;
}

double bisect_root(const LogPoly& phi, double u_neg, double u_pos) {
  // Invariant: phi(u_neg) < 0 <= phi(u_pos).
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (u_neg + u_pos);
    (phi(mid) < 0 ? u_neg : u_pos) = mid;
  }
  return 0.5 * (u_neg + u_pos);
}

}  // namespace

RiskInterval risk_interval(int sample_count, int support_count, double beta,
                           int dimension) {
  if (sample_count <= dimension) {
    throw std::invalid_argument("need more samples than the decision dimension");
  }
  if (support_count < 0 || support_count > sample_count) {
    throw std::invalid_argument("support count out of range");
  }
  if (!(beta > 0 && beta < 1)) {
    throw std::invalid_argument("confidence beta must lie in (0,1)");
  }

  const int K = sample_count;
  const int s = support_count;
  const LogPoly phi = make_poly(K, s, beta);

  RiskInterval out;
  out.support_count = s;
  out.beta = beta;
  out.sample_count = K;

  if (s == K) {
    // Positive term is constant: the polynomial is positive at t = 0 and has
    // a single root; the whole unseen mass may be violating.
    const double u_hi = bisect_root(phi, 60.0, -200.0);
    out.eps_upper = 1.0;
    out.eps_lower = std::max(0.0, 1.0 - std::exp(u_hi));
    return out;
  }

  // Peak of the concave phi by ternary search.
  double lo = -200, hi = 60;
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3;
    const double m2 = hi - (hi - lo) / 3;
    if (phi(m1) < phi(m2)) lo = m1;
    else hi = m2;
  }
  const double u_peak = 0.5 * (lo + hi);
  if (!(phi(u_peak) > 0)) {
    throw std::runtime_error("defining polynomial has no positive region");
  }

  // Walk outward until phi goes negative, then bisect each side.
  double u_left = u_peak - 1;
  while (phi(u_left) >= 0) u_left = u_peak - 2 * (u_peak - u_left);
  double u_right = u_peak + 1;
  while (phi(u_right) >= 0) u_right = u_peak + 2 * (u_right - u_peak);

  const double t_lo = std::exp(bisect_root(phi, u_left, u_peak));
  const double t_hi = std::exp(bisect_root(phi, u_right, u_peak));
  out.eps_upper = 1.0 - t_lo;
  out.eps_lower = std::max(0.0, 1.0 - t_hi);
  return out;
}

}  // namespace otr
