#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "hetnet/equilibrium.hpp"
#include "hetnet/experiment.hpp"
#include "hetnet/scenario_gen.hpp"
#include "hetnet/scenario_json.hpp"
#include "hetnet/sim_engine.hpp"
#include "hetnet/trace_io.hpp"

namespace py = pybind11;
using namespace hetnet;

namespace {

py::dict power_state_dict(const PowerState& s) {
    py::dict d;
    d["p1"] = s.p1;
    d["p2"] = s.p2;
    d["e1"] = s.e1;
    d["e2"] = s.e2;
    d["sinr1"] = s.sinr1;
    d["sinr2"] = s.sinr2;
    d["rate1"] = s.rate1;
    d["rate2"] = s.rate2;
    return d;
}

py::dict report_dict(const BackhaulReport& r) {
    py::dict d;
    d["eta_n"] = r.eta_n;
    d["gamma_relay_sum"] = r.gamma_relay_sum;
    d["v"] = r.v;
    d["demand"] = r.demand;
    d["v1"] = r.v1;
    d["v2"] = r.v2;
    py::list states;
    for (auto s : r.ue_states) states.append(to_string(s));
    d["states"] = states;
    return d;
}

py::dict trace_dict(const Trace& t) {
    py::dict d;
    d["verdict"] = std::string(to_string(t.verdict.kind));
    d["converged"] = t.converged();
    d["iteration"] = t.verdict.iteration;
    d["period"] = t.verdict.period;
    d["eta_n_final"] = t.metrics.eta_n_final;
    d["eta_n_normalized"] = t.metrics.eta_n_normalized;
    d["avg_total_power"] = t.metrics.avg_total_power;
    d["iterations_run"] = t.metrics.iterations_run;
    py::list states, reports;
    for (const auto& s : t.states) states.append(power_state_dict(s));
    for (const auto& r : t.reports) reports.append(report_dict(r));
    d["states"] = states;
    d["reports"] = reports;
    return d;
}

py::dict matrices_dict(const CrossGainMatrices& m) {
    py::dict d;
    d["f11"] = m.f11;
    d["f12"] = m.f12;
    d["f21"] = m.f21;
    d["f22"] = m.f22;
    d["d1"] = m.d1;
    d["d2"] = m.d2;
    d["w1"] = m.w1;
    d["w2"] = m.w2;
    d["lambda"] = m.lambda;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dual-connectivity uplink power control simulator";

    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::enum_<Policy>(m, "Policy")
        .value("Waterfilling", Policy::Waterfilling)
        .value("Bdt", Policy::Bdt)
        .value("Greedy", Policy::Greedy)
        .value("FixedSinr", Policy::FixedSinr);

    py::enum_<BackhaulState>(m, "BackhaulState")
        .value("S1", BackhaulState::S1)
        .value("S2", BackhaulState::S2)
        .value("S3", BackhaulState::S3)
        .value("S4", BackhaulState::S4)
        .value("S5", BackhaulState::S5)
        .value("S6", BackhaulState::S6)
        .value("S7", BackhaulState::S7)
        .value("S8", BackhaulState::S8)
        .value("S9", BackhaulState::S9);

    py::class_<Scenario>(m, "Scenario")
        .def_static(
            "from_json", [](const std::string& text) { return scenario_from_json(nlohmann::json::parse(text)); },
            py::arg("text"))
        .def("to_json", [](const Scenario& s) { return to_json(s).dump(); })
        .def("save", [](const Scenario& s, const std::filesystem::path& p) { save_scenario(s, p); })
        .def_property_readonly("n_ues", &Scenario::size)
        .def_property_readonly("n_poas", [](const Scenario& s) { return s.poas.size(); })
        .def_readwrite("tau", &Scenario::tau)
        .def_readwrite("z_factor", &Scenario::z_factor)
        .def_readwrite("noise_psd", &Scenario::noise_psd)
        .def("gain", &Scenario::gain, py::arg("ue"), py::arg("poa"), py::arg("channel"))
        .def("__len__", &Scenario::size);

    py::class_<GeneratorParams>(m, "GeneratorParams")
        .def(py::init<>())
        .def_readwrite("n_ues", &GeneratorParams::n_ues)
        .def_readwrite("n_relays", &GeneratorParams::n_relays)
        .def_readwrite("n_picos", &GeneratorParams::n_picos)
        .def_readwrite("n_fixed_sinr_ues", &GeneratorParams::n_fixed_sinr_ues)
        .def_readwrite("radius", &GeneratorParams::radius)
        .def_readwrite("alpha", &GeneratorParams::alpha)
        .def_readwrite("backhaul_scale", &GeneratorParams::backhaul_scale)
        .def_readwrite("tau", &GeneratorParams::tau)
        .def_readwrite("z", &GeneratorParams::z)
        .def_readwrite("separate_tier_channels", &GeneratorParams::separate_tier_channels)
        .def_readwrite("seed", &GeneratorParams::seed);

    m.def("load_scenario", [](const std::filesystem::path& p) { return load_scenario(p); }, py::arg("path"));
    m.def("validate_scenario", &validate_scenario, py::arg("scenario"));
    m.def("generate", &generate, py::arg("params"));
    m.def(
        "worked_example",
        [](bool limited) {
            return worked_example(limited ? WorkedExampleCase::LimitedBackhaul : WorkedExampleCase::HighBackhaul);
        },
        py::arg("limited") = false);

    m.def("build_matrices", [](const Scenario& s) { return matrices_dict(build_matrices(s)); }, py::arg("scenario"));
    m.def(
        "evaluate_powers",
        [](const Scenario& s, const VectorXd& p1, const VectorXd& p2) {
            return power_state_dict(evaluate_powers(build_matrices(s), p1, p2));
        },
        py::arg("scenario"), py::arg("p1"), py::arg("p2"));
    m.def(
        "assess_backhaul",
        [](const Scenario& s, const VectorXd& rate1, const VectorXd& rate2) {
            return report_dict(assess_backhaul(s, rate1, rate2));
        },
        py::arg("scenario"), py::arg("rate1"), py::arg("rate2"));
    m.def("network_capacity", &network_capacity, py::arg("scenario"), py::arg("rate1"), py::arg("rate2"));
    m.def("classify_state", &classify_state, py::arg("v1"), py::arg("v2"), py::arg("tau"));

    m.def(
        "waterfill",
        [](double p_max, double e1, double e2, double w1, double w2) {
            const PowerSplit s = waterfill(p_max, e1, e2, w1, w2);
            return std::make_pair(s.p1, s.p2);
        },
        py::arg("p_max"), py::arg("e1"), py::arg("e2"), py::arg("w1"), py::arg("w2"));
    m.def(
        "greedy_update",
        [](double p_max, double e1, double e2, double w1, double w2, double v1_plus, double v2_plus) {
            const PowerSplit s = greedy_update(p_max, e1, e2, w1, w2, v1_plus, v2_plus);
            return std::make_pair(s.p1, s.p2);
        },
        py::arg("p_max"), py::arg("e1"), py::arg("e2"), py::arg("w1"), py::arg("w2"), py::arg("v1_plus"),
        py::arg("v2_plus"));
    m.def(
        "bdt_update",
        [](BackhaulState state, double p1, double p2, double p_max, double e1, double e2, double w1, double w2,
           double z) {
            const PowerSplit s = bdt_update(state, PowerSplit{p1, p2}, p_max, e1, e2, w1, w2, z);
            return std::make_pair(s.p1, s.p2);
        },
        py::arg("state"), py::arg("p1"), py::arg("p2"), py::arg("p_max"), py::arg("e1"), py::arg("e2"),
        py::arg("w1"), py::arg("w2"), py::arg("z"));

    m.def("spectral_radius", &spectral_radius, py::arg("matrix"));
    m.def(
        "analyze_system",
        [](const Scenario& s) {
            const IterationSystem sys = analyze_system(build_matrices(s), p_max_vector(s));
            py::dict d;
            d["m"] = sys.m;
            d["n"] = sys.n_vec;
            d["spectral_radius"] = sys.spectral_radius;
            d["spectral_radius_abs"] = sys.spectral_radius_abs;
            d["fixed_point_p1"] = sys.fixed_point_p1;
            d["interior"] = sys.interior;
            return d;
        },
        py::arg("scenario"));
    m.def(
        "closed_form_equilibrium",
        [](const Scenario& s) {
            const VectorXd pmax = p_max_vector(s);
            const Equilibrium eq = closed_form_equilibrium(build_system(build_matrices(s), pmax), pmax);
            return py::make_tuple(eq.p1, eq.p2, eq.interior);
        },
        py::arg("scenario"));

    m.def(
        "run",
        [](const Scenario& s, Policy policy, int max_iter, double eps, int window) {
            RunOptions o;
            o.max_iter = max_iter;
            o.eps = eps;
            o.window = window;
            Trace t;
            {
                py::gil_scoped_release release;
                t = run(s, policy, o);
            }
            return trace_dict(t);
        },
        py::arg("scenario"), py::arg("policy") = Policy::Bdt, py::arg("max_iter") = 100, py::arg("eps") = 1e-6,
        py::arg("window") = 5);

    m.def(
        "monte_carlo_preset",
        [](const std::string& preset, int trials, std::uint64_t seed, int threads) {
            MonteCarloConfig cfg = preset_config(preset, trials, seed);
            cfg.threads = threads;
            MonteCarloResult res;
            {
                py::gil_scoped_release release;
                res = monte_carlo(cfg);
            }
            py::list rows;
            for (const auto& r : res.summary) {
                py::dict d;
                d["sweep_var"] = r.sweep_var;
                d["sweep_value"] = r.sweep_value;
                d["policy"] = to_string(r.policy);
                d["trials"] = r.trials;
                d["eta_n_normalized_mean"] = r.eta_n_normalized_mean;
                d["eta_n_normalized_se"] = r.eta_n_normalized_se;
                d["avg_total_power_mean"] = r.avg_total_power_mean;
                d["avg_total_power_se"] = r.avg_total_power_se;
                d["convergence_pct"] = r.convergence_pct;
                rows.append(d);
            }
            return rows;
        },
        py::arg("preset"), py::arg("trials"), py::arg("seed") = 1, py::arg("threads") = 0);
}
