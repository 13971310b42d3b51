#include "otr/json_io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace otr {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

// Object key for a numeric VOT: plain integer when exact, shortest decimal
// otherwise.
std::string num_key(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  return format_double(v);
}

}  // namespace

Json to_json(const NetworkSpec& net) {
  Json arcs = Json::array();
  for (const Arc& a : net.arcs) {
    arcs.push_back({{"travel_time", a.travel_time}, {"capacity", a.capacity}});
  }
  return Json{{"arcs", arcs}};
}

NetworkSpec network_from_json(const Json& j) {
  NetworkSpec net;
  for (const Json& a : j.at("arcs")) {
    net.arcs.push_back({a.at("travel_time").get<double>(), a.at("capacity").get<int>()});
  }
  return net;
}

Json to_json(const ArrivalProfile& profile) {
  Json votes = Json::array();
  for (const VotWeight& w : profile.vot_probs) {
    votes.push_back({{"vot", w.vot}, {"prob", w.prob}});
  }
  Json rates = Json::array();
  for (const RateSegment& s : profile.rate_schedule) {
    rates.push_back({{"start", s.start}, {"rate", s.rate}});
  }
  return Json{{"vot_probs", votes}, {"rate_schedule", rates}};
}

ArrivalProfile profile_from_json(const Json& j) {
  ArrivalProfile p;
  for (const Json& w : j.at("vot_probs")) {
    p.vot_probs.push_back({w.at("vot").get<double>(), w.at("prob").get<double>()});
  }
  for (const Json& s : j.at("rate_schedule")) {
    p.rate_schedule.push_back({s.at("start").get<double>(), s.at("rate").get<double>()});
  }
  return p;
}

Json to_json(const ScenarioPreset& preset) {
  return Json{{"name", preset.name},
              {"network", to_json(preset.network)},
              {"profile", to_json(preset.profile)},
              {"n_users", preset.n_users}};
}

ScenarioPreset preset_from_json(const Json& j) {
  ScenarioPreset p;
  p.name = j.at("name").get<std::string>();
  p.network = network_from_json(j.at("network"));
  p.profile = profile_from_json(j.at("profile"));
  p.n_users = j.at("n_users").get<int>();
  return p;
}

Json to_json(const InputSequence& seq) {
  Json users = Json::array();
  for (const UserArrival& u : seq.users) {
    users.push_back({{"arrival_time", u.arrival_time}, {"vot", u.vot}});
  }
  return Json{{"vot_alphabet", seq.vot_alphabet}, {"users", users}};
}

InputSequence sequence_from_json(const Json& j) {
  InputSequence seq;
  seq.vot_alphabet = j.at("vot_alphabet").get<std::vector<double>>();
  for (const Json& u : j.at("users")) {
    seq.users.push_back({u.at("arrival_time").get<double>(), u.at("vot").get<double>()});
  }
  return seq;
}

Json to_json(const Assignment& assignment) {
  return Json{{"mode", assignment.integral ? "integral" : "fractional"},
              {"x", assignment.x}};
}

Json to_json(const OptResult& result) {
  Json j{{"status", result.status == OptResult::Status::Optimal ? "optimal" : "infeasible"}};
  if (result.status == OptResult::Status::Optimal) {
    j["value"] = result.value;
    j["assignment"] = to_json(result.assignment);
  }
  return j;
}

Json to_json(const TiPolicy& policy) {
  Json probs = Json::object();
  for (size_t t = 0; t < policy.theta.size(); ++t) {
    probs[num_key(policy.theta[t])] = policy.probs[t];
  }
  return Json{{"kind", "TI"},
              {"theta", policy.theta},
              {"boundaries", Json::array()},
              {"probs", probs},
              {"alpha_star", policy.alpha_star}};
}

Json to_json(const TdPolicy& policy) {
  Json probs = Json::object();
  for (size_t t = 0; t < policy.theta.size(); ++t) {
    Json per_interval = Json::array();
    for (size_t j = 0; j < policy.boundaries.size(); ++j) {
      per_interval.push_back(policy.probs[j][t]);
    }
    probs[num_key(policy.theta[t])] = per_interval;
  }
  return Json{{"kind", "TD"},
              {"theta", policy.theta},
              {"boundaries", policy.boundaries},
              {"probs", probs},
              {"alpha_star", policy.alpha_star}};
}

TiPolicy ti_policy_from_json(const Json& j) {
  if (j.at("kind").get<std::string>() != "TI") {
    throw std::runtime_error("policy kind is not TI");
  }
  TiPolicy p;
  p.theta = j.at("theta").get<std::vector<double>>();
  p.alpha_star = j.at("alpha_star").get<double>();
  p.probs.resize(p.theta.size());
  for (size_t t = 0; t < p.theta.size(); ++t) {
    p.probs[t] = j.at("probs").at(num_key(p.theta[t])).get<std::vector<double>>();
  }
  return p;
}

TdPolicy td_policy_from_json(const Json& j) {
  if (j.at("kind").get<std::string>() != "TD") {
    throw std::runtime_error("policy kind is not TD");
  }
  TdPolicy p;
  p.theta = j.at("theta").get<std::vector<double>>();
  p.boundaries = j.at("boundaries").get<std::vector<double>>();
  p.alpha_star = j.at("alpha_star").get<double>();
  const size_t T = p.theta.size(), q = p.boundaries.size();
  p.probs.assign(q, std::vector<std::vector<double>>(T));
  for (size_t t = 0; t < T; ++t) {
    const Json& per_interval = j.at("probs").at(num_key(p.theta[t]));
    if (per_interval.size() != q) throw std::runtime_error("policy interval count mismatch");
    for (size_t jj = 0; jj < q; ++jj) {
      p.probs[jj][t] = per_interval[jj].get<std::vector<double>>();
    }
  }
  return p;
}

namespace {

Json risk_to_json(const RiskInterval& r) {
  return Json{{"eps_lower", r.eps_lower},
              {"eps_upper", r.eps_upper},
              {"support_count", r.support_count},
              {"beta", r.beta},
              {"sample_count", r.sample_count}};
}

Json policy_summary_to_json(const PolicySummary& s) {
  return Json{{"alpha_star", s.alpha_star},
              {"support_count", s.support_count},
              {"risk", risk_to_json(s.risk)},
              {"violation_fraction", s.violation_fraction},
              {"degenerate", s.degenerate}};
}

Json histogram_to_json(const Histogram& h) {
  return Json{{"edges", h.edges}, {"counts", h.counts}};
}

}  // namespace

Json to_json(const ExperimentReport& report) {
  Json instances = Json::array();
  for (const InstanceRecord& r : report.instances) {
    instances.push_back(
        {{"index", r.index},
         {"seed", r.seed},
         {"infeasible", r.infeasible},
         {"opt_value", r.opt_value},
         {"greedy", {{"ratio_vs_fractional_opt", r.greedy_ratio}}},
         {"ti",
          {{"ratio_vs_fractional_opt", r.ti_ratio},
           {"expected_cost", r.ti_expected_cost},
           {"violated", r.ti_violated},
           {"capacity_breaches", r.ti_capacity_breaches}}},
         {"td",
          {{"ratio_vs_fractional_opt", r.td_ratio},
           {"expected_cost", r.td_expected_cost},
           {"violated", r.td_violated},
           {"capacity_breaches", r.td_capacity_breaches}}}});
  }
  return Json{
      {"scenario", report.scenario},
      {"k_train", report.k_train},
      {"k_test", report.k_test},
      {"n_users", report.n_users},
      {"master_seed", report.master_seed},
      {"beta", report.beta},
      {"resamples", {{"train", report.train_resamples}, {"test", report.test_resamples}}},
      {"policies", {{"ti", policy_summary_to_json(report.ti)},
                    {"td", policy_summary_to_json(report.td)}}},
      {"instances", instances},
      {"summary",
       {{"mean_ratio_vs_fractional_opt",
         {{"greedy", report.mean_greedy_ratio},
          {"ti", report.mean_ti_ratio},
          {"td", report.mean_td_ratio}}},
        {"histograms",
         {{"greedy", histogram_to_json(report.hist_greedy)},
          {"ti", histogram_to_json(report.hist_ti)},
          {"td", histogram_to_json(report.hist_td)}}}}}};
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("cannot parse " + path + ": " + e.what());
  }
  return j;
}

void save_json(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path);
}

namespace {

void write_histogram_csv(const Histogram& h, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "bin_lo,bin_hi,count\n";
  for (size_t b = 0; b < h.counts.size(); ++b) {
    out << format_double(h.edges[b]) << ',' << format_double(h.edges[b + 1]) << ','
        << h.counts[b] << '\n';
  }
}

}  // namespace

void write_report_csvs(const ExperimentReport& report, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const std::string inst_path = (fs::path(dir) / "instances.csv").string();
  std::ofstream out(inst_path);
  if (!out) throw std::runtime_error("cannot open " + inst_path + " for writing");
  out << "index,seed,opt_value,greedy_ratio_vs_fractional_opt,"
         "ti_ratio_vs_fractional_opt,td_ratio_vs_fractional_opt,"
         "ti_expected_cost,td_expected_cost,ti_violated,td_violated,"
         "ti_capacity_breaches,td_capacity_breaches,infeasible\n";
  for (const InstanceRecord& r : report.instances) {
    out << r.index << ',' << r.seed << ',' << format_double(r.opt_value) << ','
        << format_double(r.greedy_ratio) << ',' << format_double(r.ti_ratio) << ','
        << format_double(r.td_ratio) << ',' << format_double(r.ti_expected_cost) << ','
        << format_double(r.td_expected_cost) << ',' << (r.ti_violated ? 1 : 0) << ','
        << (r.td_violated ? 1 : 0) << ',' << r.ti_capacity_breaches << ','
        << r.td_capacity_breaches << ',' << (r.infeasible ? 1 : 0) << '\n';
  }
  write_histogram_csv(report.hist_greedy, (fs::path(dir) / "hist_greedy.csv").string());
  write_histogram_csv(report.hist_ti, (fs::path(dir) / "hist_ti.csv").string());
  write_histogram_csv(report.hist_td, (fs::path(dir) / "hist_td.csv").string());
}

}  // namespace otr
