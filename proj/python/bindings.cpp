#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "otr/experiment.hpp"
#include "otr/greedy.hpp"
#include "otr/json_io.hpp"
#include "otr/learning.hpp"
#include "otr/offline.hpp"
#include "otr/risk.hpp"
#include "otr/rounding.hpp"
#include "otr/sampling.hpp"
#include "otr/worstcase.hpp"

namespace py = pybind11;

namespace {

otr::NetworkSpec network_from_pairs(
    const std::vector<std::pair<double, int>>& arcs) {
  otr::NetworkSpec net;
  for (const auto& [t, c] : arcs) net.arcs.push_back({t, c});
  return net;
}

}  // namespace

PYBIND11_MODULE(routelab, m) {
  m.doc() = "parallel-arc online routing laboratory";

  py::class_<otr::Arc>(m, "Arc")
      .def(py::init<double, int>(), py::arg("travel_time"), py::arg("capacity"))
      .def_readwrite("travel_time", &otr::Arc::travel_time)
      .def_readwrite("capacity", &otr::Arc::capacity);

  py::class_<otr::NetworkSpec>(m, "NetworkSpec")
      .def(py::init(&network_from_pairs), py::arg("arcs"))
      .def_readwrite("arcs", &otr::NetworkSpec::arcs)
      .def_property_readonly("num_arcs", &otr::NetworkSpec::num_arcs);

  py::class_<otr::UserArrival>(m, "UserArrival")
      .def(py::init<double, double>(), py::arg("arrival_time"), py::arg("vot"))
      .def_readwrite("arrival_time", &otr::UserArrival::arrival_time)
      .def_readwrite("vot", &otr::UserArrival::vot);

  py::class_<otr::InputSequence>(m, "InputSequence")
      .def(py::init<>())
      .def_readwrite("vot_alphabet", &otr::InputSequence::vot_alphabet)
      .def_readwrite("users", &otr::InputSequence::users)
      .def_property_readonly("num_users", &otr::InputSequence::num_users);

  py::class_<otr::Assignment>(m, "Assignment")
      .def_readonly("integral", &otr::Assignment::integral)
      .def_readonly("x", &otr::Assignment::x)
      .def("arc_of", &otr::Assignment::arc_of);

  py::class_<otr::OptResult>(m, "OptResult")
      .def_property_readonly(
          "optimal",
          [](const otr::OptResult& r) { return r.status == otr::OptResult::Status::Optimal; })
      .def_readonly("value", &otr::OptResult::value)
      .def_readonly("assignment", &otr::OptResult::assignment);

  py::class_<otr::TiPolicy>(m, "TiPolicy")
      .def_readonly("theta", &otr::TiPolicy::theta)
      .def_readonly("probs", &otr::TiPolicy::probs)
      .def_readonly("alpha_star", &otr::TiPolicy::alpha_star);

  py::class_<otr::TdPolicy>(m, "TdPolicy")
      .def_readonly("theta", &otr::TdPolicy::theta)
      .def_readonly("boundaries", &otr::TdPolicy::boundaries)
      .def_readonly("probs", &otr::TdPolicy::probs)
      .def_readonly("alpha_star", &otr::TdPolicy::alpha_star);

  py::class_<otr::RiskInterval>(m, "RiskInterval")
      .def_readonly("eps_lower", &otr::RiskInterval::eps_lower)
      .def_readonly("eps_upper", &otr::RiskInterval::eps_upper)
      .def_readonly("support_count", &otr::RiskInterval::support_count)
      .def_readonly("beta", &otr::RiskInterval::beta)
      .def_readonly("sample_count", &otr::RiskInterval::sample_count);

  m.def("preset_names", [] {
    std::vector<std::string> names;
    for (const auto& p : otr::presets()) names.push_back(p.name);
    return names;
  });
  m.def(
      "sample_preset_sequence",
      [](const std::string& name, std::uint64_t seed) {
        const otr::ScenarioPreset& p = otr::preset_by_name(name);
        return otr::sample_sequence(p.profile, p.n_users, seed);
      },
      py::arg("name"), py::arg("seed"));
  m.def(
      "preset_network",
      [](const std::string& name) { return otr::preset_by_name(name).network; },
      py::arg("name"));

  m.def("opt_fractional", &otr::opt_fractional, py::arg("network"), py::arg("sequence"));
  m.def("opt_integral_bruteforce", &otr::opt_integral_bruteforce, py::arg("network"),
        py::arg("sequence"));
  m.def("greedy_route", &otr::greedy_route, py::arg("network"), py::arg("sequence"));
  m.def("total_cost", &otr::total_cost, py::arg("network"), py::arg("sequence"),
        py::arg("assignment"));
  m.def("empirical_ratio", &otr::empirical_ratio, py::arg("algorithm_cost"),
        py::arg("opt_value"));
  m.def("occupancy_count", &otr::occupancy_count, py::arg("network"), py::arg("sequence"),
        py::arg("assignment"), py::arg("arc"), py::arg("t"));

  m.def(
      "learn_ti",
      [](const otr::NetworkSpec& net,
         const std::vector<std::pair<otr::InputSequence, double>>& training) {
        std::vector<otr::TrainingScenario> ts;
        for (const auto& [seq, opt] : training) ts.push_back({seq, opt});
        return otr::learn_ti(net, ts);
      },
      py::arg("network"), py::arg("training"));
  m.def(
      "learn_td",
      [](const otr::NetworkSpec& net,
         const std::vector<std::pair<otr::InputSequence, double>>& training,
         const std::vector<double>& boundaries) {
        std::vector<otr::TrainingScenario> ts;
        for (const auto& [seq, opt] : training) ts.push_back({seq, opt});
        return otr::learn_td(net, ts, boundaries);
      },
      py::arg("network"), py::arg("training"), py::arg("boundaries"));

  m.def("risk_interval", &otr::risk_interval, py::arg("sample_count"),
        py::arg("support_count"), py::arg("beta"), py::arg("dimension"));

  m.def("arc_for_uniform", &otr::arc_for_uniform, py::arg("probs"), py::arg("u"));
  m.def("route_online_ti",
        py::overload_cast<const otr::TiPolicy&, const otr::NetworkSpec&,
                          const otr::InputSequence&, std::uint64_t>(&otr::route_online),
        py::arg("policy"), py::arg("network"), py::arg("sequence"), py::arg("seed"));
  m.def("route_online_td",
        py::overload_cast<const otr::TdPolicy&, const otr::NetworkSpec&,
                          const otr::InputSequence&, std::uint64_t>(&otr::route_online),
        py::arg("policy"), py::arg("network"), py::arg("sequence"), py::arg("seed"));
  m.def("expected_cost_ti",
        py::overload_cast<const otr::TiPolicy&, const otr::NetworkSpec&,
                          const otr::InputSequence&>(&otr::expected_cost),
        py::arg("policy"), py::arg("network"), py::arg("sequence"));
  m.def("expected_cost_td",
        py::overload_cast<const otr::TdPolicy&, const otr::NetworkSpec&,
                          const otr::InputSequence&>(&otr::expected_cost),
        py::arg("policy"), py::arg("network"), py::arg("sequence"));

  m.def(
      "three_arc_trap",
      [](double t3) {
        const otr::AdversarialInstance inst = otr::three_arc_trap(t3);
        return py::make_tuple(inst.network, inst.sequence, inst.expected_ratio);
      },
      py::arg("expensive_time"));
  m.def(
      "vot_inversion_trap",
      [](double v1, double v2, double t1, double t2, double eps) {
        const otr::AdversarialInstance inst = otr::vot_inversion_trap(v1, v2, t1, t2, eps);
        return py::make_tuple(inst.network, inst.sequence, inst.expected_ratio);
      },
      py::arg("vot_first"), py::arg("vot_second"), py::arg("t1"), py::arg("t2"),
      py::arg("eps") = 0.5);
  m.def("vot_inversion_ratio", &otr::vot_inversion_ratio, py::arg("vot_first"),
        py::arg("vot_second"), py::arg("t1"), py::arg("t2"));

  m.def(
      "run_experiment_json",
      [](const std::string& preset, int k_train, int k_test, std::uint64_t seed,
         double beta) {
        const otr::ExperimentConfig cfg =
            otr::config_from_preset(otr::preset_by_name(preset));
        return otr::to_json(otr::run_experiment(cfg, k_train, k_test, seed, beta)).dump();
      },
      py::arg("preset"), py::arg("k_train"), py::arg("k_test"), py::arg("seed"),
      py::arg("beta") = 1e-6);

  m.def("sequence_to_json",
        [](const otr::InputSequence& seq) { return otr::to_json(seq).dump(); });
  m.def("sequence_from_json", [](const std::string& text) {
    return otr::sequence_from_json(otr::Json::parse(text));
  });
}
