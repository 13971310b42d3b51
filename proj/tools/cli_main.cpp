#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "otr/experiment.hpp"
#include "otr/greedy.hpp"
#include "otr/json_io.hpp"
#include "otr/learning.hpp"
#include "otr/offline.hpp"
#include "otr/risk.hpp"
#include "otr/rng.hpp"
#include "otr/rounding.hpp"
#include "otr/sampling.hpp"
#include "otr/worstcase.hpp"

namespace fs = std::filesystem;
using otr::Json;

namespace {

struct CommonArgs {
  std::string preset;
  std::string config_file;
  int k_train = 100;
  int k_test = 100;
  std::uint64_t seed = 0;
  double beta = 1e-6;
  std::string out_dir;
};

void add_instance_source(CLI::App* cmd, CommonArgs& args) {
  auto* p = cmd->add_option("--preset", args.preset, "built-in scenario name");
  auto* c = cmd->add_option("--config", args.config_file, "scenario config JSON");
  p->excludes(c);
  c->excludes(p);
}

otr::ExperimentConfig resolve_config(const CommonArgs& args) {
  if (!args.config_file.empty()) {
    return otr::config_from_preset(otr::preset_from_json(otr::load_json(args.config_file)));
  }
  if (args.preset.empty()) {
    throw std::runtime_error("one of --preset or --config is required");
  }
  return otr::config_from_preset(otr::preset_by_name(args.preset));
}

std::string seq_name(const char* prefix, int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s_%03d.json", prefix, i);
  return buf;
}

void require_out(const CommonArgs& args) {
  if (args.out_dir.empty()) throw std::runtime_error("--out is required");
  fs::create_directories(args.out_dir);
}

// Load the sequences written by `gen` along with fractional optima.
std::vector<otr::TrainingScenario> load_training(const otr::ExperimentConfig& cfg,
                                                 const std::string& dir, int k_train) {
  std::vector<otr::TrainingScenario> out;
  for (int i = 0; i < k_train; ++i) {
    const std::string path = (fs::path(dir) / seq_name("train", i)).string();
    otr::InputSequence seq = otr::sequence_from_json(otr::load_json(path));
    otr::OptResult opt = otr::opt_fractional(cfg.network, seq);
    if (opt.status != otr::OptResult::Status::Optimal) {
      throw std::runtime_error(path + ": routing program infeasible");
    }
    out.push_back({std::move(seq), opt.value});
  }
  return out;
}

int cmd_gen(const CommonArgs& args) {
  const otr::ExperimentConfig cfg = resolve_config(args);
  require_out(args);
  const std::uint64_t stream = otr::derive_seed(args.seed, 1);
  std::uint64_t counter = 0;
  Json manifest{{"scenario", cfg.name},
                {"k_train", args.k_train},
                {"k_test", args.k_test},
                {"seed", args.seed},
                {"n_users", cfg.n_users}};
  for (int i = 0; i < args.k_train; ++i) {
    const otr::InputSequence seq =
        otr::sample_sequence(cfg.profile, cfg.n_users, otr::derive_seed(stream, counter++));
    otr::save_json(otr::to_json(seq), (fs::path(args.out_dir) / seq_name("train", i)).string());
  }
  for (int i = 0; i < args.k_test; ++i) {
    const otr::InputSequence seq =
        otr::sample_sequence(cfg.profile, cfg.n_users, otr::derive_seed(stream, counter++));
    otr::save_json(otr::to_json(seq), (fs::path(args.out_dir) / seq_name("test", i)).string());
  }
  otr::save_json(manifest, (fs::path(args.out_dir) / "manifest.json").string());
  std::cout << "wrote " << args.k_train << " training and " << args.k_test
            << " test sequences to " << args.out_dir << "\n";
  return 0;
}

int cmd_opt(const CommonArgs& args, const std::string& sequence_file) {
  const otr::ExperimentConfig cfg = resolve_config(args);
  const otr::InputSequence seq = otr::sequence_from_json(otr::load_json(sequence_file));
  const otr::OptResult res = otr::opt_fractional(cfg.network, seq);
  const Json j = otr::to_json(res);
  if (!args.out_dir.empty()) {
    fs::create_directories(args.out_dir);
    otr::save_json(j, (fs::path(args.out_dir) / "opt.json").string());
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_train(const CommonArgs& args) {
  const otr::ExperimentConfig cfg = resolve_config(args);
  require_out(args);
  const std::vector<otr::TrainingScenario> training =
      load_training(cfg, args.out_dir, args.k_train);
  const otr::TiPolicy ti = otr::learn_ti(cfg.network, training);
  const otr::TdPolicy td = otr::learn_td(cfg.network, training, cfg.td_boundaries);
  otr::save_json(otr::to_json(ti), (fs::path(args.out_dir) / "policy_ti.json").string());
  otr::save_json(otr::to_json(td), (fs::path(args.out_dir) / "policy_td.json").string());
  std::cout << "alpha_star ti=" << otr::format_double(ti.alpha_star)
            << " td=" << otr::format_double(td.alpha_star) << "\n";
  return 0;
}

int cmd_risk(const CommonArgs& args) {
  const otr::ExperimentConfig cfg = resolve_config(args);
  require_out(args);
  const std::vector<otr::TrainingScenario> training =
      load_training(cfg, args.out_dir, args.k_train);
  const int M = cfg.network.num_arcs();
  const int T = static_cast<int>(training.front().sequence.vot_alphabet.size());
  const int q = static_cast<int>(cfg.td_boundaries.size());

  const otr::SupportInfo s_ti = otr::count_support_ti(cfg.network, training);
  const otr::RiskInterval r_ti =
      otr::risk_interval(args.k_train, s_ti.count, args.beta, T * (M - 1));
  const otr::SupportInfo s_td = otr::count_support_td(cfg.network, training, cfg.td_boundaries);
  const otr::RiskInterval r_td =
      otr::risk_interval(args.k_train, s_td.count, args.beta, q * T * (M - 1));

  auto risk_json = [](const otr::SupportInfo& s, const otr::RiskInterval& r) {
    return Json{{"support_count", s.count},
                {"support_scenarios", s.scenario_indices},
                {"eps_lower", r.eps_lower},
                {"eps_upper", r.eps_upper},
                {"beta", r.beta},
                {"sample_count", r.sample_count}};
  };
  const Json j{{"ti", risk_json(s_ti, r_ti)}, {"td", risk_json(s_td, r_td)}};
  otr::save_json(j, (fs::path(args.out_dir) / "risk.json").string());
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_eval(const CommonArgs& args) {
  const otr::ExperimentConfig cfg = resolve_config(args);
  require_out(args);
  const otr::TiPolicy ti = otr::ti_policy_from_json(
      otr::load_json((fs::path(args.out_dir) / "policy_ti.json").string()));
  const otr::TdPolicy td = otr::td_policy_from_json(
      otr::load_json((fs::path(args.out_dir) / "policy_td.json").string()));

  const std::uint64_t ti_stream = otr::derive_seed(args.seed, 2);
  const std::uint64_t td_stream = otr::derive_seed(args.seed, 3);
  Json rows = Json::array();
  for (int i = 0; i < args.k_test; ++i) {
    const std::string path = (fs::path(args.out_dir) / seq_name("test", i)).string();
    const otr::InputSequence seq = otr::sequence_from_json(otr::load_json(path));
    const otr::OptResult opt = otr::opt_fractional(cfg.network, seq);
    if (opt.status != otr::OptResult::Status::Optimal) {
      throw std::runtime_error(path + ": routing program infeasible");
    }
    const otr::Assignment g = otr::greedy_route(cfg.network, seq);
    const otr::Assignment ri =
        otr::route_online(ti, cfg.network, seq, otr::derive_seed(ti_stream, i));
    const otr::Assignment rd =
        otr::route_online(td, cfg.network, seq, otr::derive_seed(td_stream, i));
    rows.push_back(
        {{"index", i},
         {"opt_value", opt.value},
         {"greedy",
          {{"ratio_vs_fractional_opt",
            otr::empirical_ratio(otr::total_cost(cfg.network, seq, g), opt.value)}}},
         {"ti",
          {{"ratio_vs_fractional_opt",
            otr::empirical_ratio(otr::total_cost(cfg.network, seq, ri), opt.value)},
           {"expected_cost", otr::expected_cost(ti, cfg.network, seq)},
           {"capacity_breaches", otr::capacity_breach_count(cfg.network, seq, ri)}}},
         {"td",
          {{"ratio_vs_fractional_opt",
            otr::empirical_ratio(otr::total_cost(cfg.network, seq, rd), opt.value)},
           {"expected_cost", otr::expected_cost(td, cfg.network, seq)},
           {"capacity_breaches", otr::capacity_breach_count(cfg.network, seq, rd)}}}});
  }
  const Json j{{"scenario", cfg.name}, {"instances", rows}};
  otr::save_json(j, (fs::path(args.out_dir) / "eval.json").string());
  std::cout << "evaluated " << args.k_test << " test instances\n";
  return 0;
}

int cmd_worstcase(const CommonArgs& args) {
  Json out = Json::array();
  for (double t3 : {20.0, 130.0, 1e4}) {
    const otr::AdversarialInstance inst = otr::three_arc_trap(t3);
    const otr::Assignment g = otr::greedy_route(inst.network, inst.sequence);
    const otr::OptResult opt = otr::opt_fractional(inst.network, inst.sequence);
    const double ratio =
        otr::empirical_ratio(otr::total_cost(inst.network, inst.sequence, g), opt.value);
    out.push_back({{"family", "three_arc_trap"},
                   {"expensive_time", t3},
                   {"network", otr::to_json(inst.network)},
                   {"sequence", otr::to_json(inst.sequence)},
                   {"expected_ratio", inst.expected_ratio},
                   {"observed_ratio", ratio}});
  }
  {
    const otr::AdversarialInstance inst = otr::vot_inversion_trap(1.0, 20.0, 20.0, 24.0);
    const otr::Assignment g = otr::greedy_route(inst.network, inst.sequence);
    const otr::OptResult opt = otr::opt_integral_bruteforce(inst.network, inst.sequence);
    const double ratio =
        otr::empirical_ratio(otr::total_cost(inst.network, inst.sequence, g), opt.value);
    out.push_back({{"family", "vot_inversion_trap"},
                   {"network", otr::to_json(inst.network)},
                   {"sequence", otr::to_json(inst.sequence)},
                   {"expected_ratio", inst.expected_ratio},
                   {"observed_ratio", ratio}});
  }
  bool all_match = true;
  for (const Json& row : out) {
    const double want = row.at("expected_ratio").get<double>();
    const double got = row.at("observed_ratio").get<double>();
    if (std::abs(want - got) > 1e-9 * std::max(1.0, std::abs(want))) all_match = false;
  }
  if (!args.out_dir.empty()) {
    fs::create_directories(args.out_dir);
    otr::save_json(out, (fs::path(args.out_dir) / "worstcase.json").string());
  }
  std::cout << out.dump(2) << "\n";
  if (!all_match) throw std::runtime_error("observed ratio deviates from the closed form");
  return 0;
}

int cmd_report(const CommonArgs& args) {
  const otr::ExperimentConfig cfg = resolve_config(args);
  require_out(args);
  const otr::ExperimentReport report =
      otr::run_experiment(cfg, args.k_train, args.k_test, args.seed, args.beta);
  otr::save_json(otr::to_json(report), (fs::path(args.out_dir) / "report.json").string());
  otr::write_report_csvs(report, args.out_dir);
  std::cout << "report written to " << args.out_dir << " (alpha_star ti="
            << otr::format_double(report.ti.alpha_star)
            << ", td=" << otr::format_double(report.td.alpha_star) << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parallel-arc online routing laboratory"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string sequence_file;

  auto add_common = [&](CLI::App* cmd, bool with_counts = true) {
    add_instance_source(cmd, args);
    if (with_counts) {
      cmd->add_option("--k-train", args.k_train, "training scenario count");
      cmd->add_option("--k-test", args.k_test, "test scenario count");
    }
    cmd->add_option("--seed", args.seed, "master seed");
    cmd->add_option("--beta", args.beta, "risk confidence parameter");
    cmd->add_option("--out", args.out_dir, "output directory");
  };

  CLI::App* gen = app.add_subcommand("gen", "sample and dump scenario sequences");
  add_common(gen);
  CLI::App* opt = app.add_subcommand("opt", "fractional offline optimum of one sequence");
  add_common(opt, false);
  opt->add_option("--sequence", sequence_file, "sequence JSON file")->required();
  CLI::App* train = app.add_subcommand("train", "learn both policies from train_*.json");
  add_common(train);
  CLI::App* risk = app.add_subcommand("risk", "support counts and risk intervals");
  add_common(risk);
  CLI::App* eval = app.add_subcommand("eval", "score policies on test_*.json");
  add_common(eval);
  CLI::App* worst = app.add_subcommand("worstcase", "adversarial instances and their ratios");
  worst->add_option("--out", args.out_dir, "output directory");
  CLI::App* report = app.add_subcommand("report", "full reproducible experiment");
  add_common(report);

  CLI11_PARSE(app, argc, argv);

  const std::string stage = app.get_subcommands().front()->get_name();
  try {
    if (gen->parsed()) return cmd_gen(args);
    if (opt->parsed()) return cmd_opt(args, sequence_file);
    if (train->parsed()) return cmd_train(args);
    if (risk->parsed()) return cmd_risk(args);
    if (eval->parsed()) return cmd_eval(args);
    if (worst->parsed()) return cmd_worstcase(args);
    if (report->parsed()) return cmd_report(args);
  } catch (const std::exception& e) {
    std::cerr << "error [" << stage << "]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
