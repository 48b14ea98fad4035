#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hetnet/equilibrium.hpp"
#include "hetnet/experiment.hpp"
#include "hetnet/scenario_gen.hpp"
#include "hetnet/scenario_json.hpp"
#include "hetnet/sim_engine.hpp"
#include "hetnet/trace_io.hpp"

namespace fs = std::filesystem;
using namespace hetnet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitNumerical = 4;
constexpr int kExitIo = 1;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    std::vector<std::string> violations;
    explicit ValidationError(std::vector<std::string> v)
        : std::runtime_error("scenario failed validation"), violations(std::move(v)) {}
};

std::string default_out_dir() {
    const char* env = std::getenv("HETNET_OUT_DIR");
    return env && *env ? env : "out";
}

fs::path prepare_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
    return dir;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    return out;
}

void finish(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_json(const fs::path& path, const nlohmann::json& doc) {
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
    finish(out, path);
}

Scenario load_checked(const std::string& path) {
    Scenario s;
    try {
        s = load_scenario(path);
    } catch (const std::invalid_argument& e) {
        throw ValidationError({e.what()});
    }
    auto violations = validate_scenario(s);
    if (!violations.empty()) throw ValidationError(std::move(violations));
    return s;
}

struct RunArgs {
    std::string scenario;
    std::string policy = "bdt";
    int iters = 100;
    double eps = 1e-6;
    int window = 5;
    std::optional<double> tau;
    std::optional<double> z;
    std::string out;
};

std::vector<double> to_std(const VectorXd& v) { return {v.data(), v.data() + v.size()}; }

nlohmann::json equilibrium_report(const VectorXd& predicted_p1, const VectorXd& predicted_p2, double rho,
                                  const PowerState& last) {
    const double err = std::max((predicted_p1 - last.p1).cwiseAbs().maxCoeff(),
                                (predicted_p2 - last.p2).cwiseAbs().maxCoeff());
    return {{"spectral_radius", rho},
            {"predicted_p1", to_std(predicted_p1)},
            {"predicted_p2", to_std(predicted_p2)},
            {"simulated_p1", to_std(last.p1)},
            {"simulated_p2", to_std(last.p2)},
            {"max_abs_error", err}};
}

int cmd_run(const RunArgs& a) {
    Scenario s = load_checked(a.scenario);
    if (a.tau) s.tau = *a.tau;
    if (a.z) s.z_factor = *a.z;
    auto violations = validate_scenario(s);
    if (!violations.empty()) throw ValidationError(std::move(violations));

    const bool mixed = a.policy == "mixed-fm";
    const Policy policy = mixed ? Policy::Waterfilling : policy_from_string(a.policy);
    RunOptions opts;
    opts.max_iter = a.iters;
    opts.eps = a.eps;
    opts.window = a.window;
    const Trace trace = run(s, policy, opts);

    const fs::path dir = prepare_dir(a.out);
    {
        auto out = open_out(dir / "trace.csv");
        write_trace_csv(out, trace);
        finish(out, dir / "trace.csv");
    }
    nlohmann::json m = metrics_to_json(trace);
    m["policy"] = a.policy;
    write_json(dir / "metrics.json", m);

    if (s.size() == 0) return kExitOk;
    const CrossGainMatrices cm = build_matrices(s);
    const VectorXd pmax = p_max_vector(s);
    const IterationSystem sys = analyze_system(cm, pmax);
    const PowerState& last = trace.states.back();
    if (mixed) {
        VectorXd q(s.size()), beta = VectorXd::Zero(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            q(i) = s.ues[i].dual() ? 0.0 : 1.0;
            if (!s.ues[i].dual()) beta(i) = *s.ues[i].fixed_sinr_target;
        }
        const AffineMap map = mixed_population_system(cm, sys, q, beta);
        const double rho = spectral_radius(map.matrix);
        if (rho < 1.0) {
            const VectorXd p1 = affine_fixed_point(map);
            VectorXd p2 = (pmax - p1).cwiseProduct(VectorXd::Ones(s.size()) - q);
            write_json(dir / "equilibrium.json", equilibrium_report(p1, p2, rho, last));
        }
    } else if (sys.spectral_radius < 1.0) {
        const Equilibrium eq = closed_form_equilibrium(sys, pmax);
        nlohmann::json doc = equilibrium_report(eq.p1, eq.p2, sys.spectral_radius, last);
        doc["interior"] = eq.interior;
        write_json(dir / "equilibrium.json", doc);
    }
    std::cout << "verdict: " << m["verdict"].get<std::string>() << ", eta_n: " << trace.metrics.eta_n_final
              << " bit/s, avg power: " << trace.metrics.avg_total_power << " W\n";
    return kExitOk;
}

struct ExperimentArgs {
    std::string preset;
    int trials = 100;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out;
};

int cmd_experiment(const ExperimentArgs& a) {
    MonteCarloConfig cfg = preset_config(a.preset, a.trials, a.seed);
    cfg.threads = a.threads;
    const MonteCarloResult res = monte_carlo(cfg);
    const fs::path dir = prepare_dir(a.out);
    {
        auto out = open_out(dir / "trials.csv");
        write_trial_csv(out, res.trials);
        finish(out, dir / "trials.csv");
    }
    {
        auto out = open_out(dir / "summary.csv");
        write_summary_csv(out, res.summary);
        finish(out, dir / "summary.csv");
    }
    write_summary_csv(std::cout, res.summary);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dual-connectivity uplink power control simulator"};
    app.require_subcommand(1);

    RunArgs run_args;
    run_args.out = default_out_dir();
    auto* run_cmd = app.add_subcommand("run", "Simulate one scenario");
    run_cmd->add_option("--scenario", run_args.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--policy", run_args.policy, "Power control policy")
        ->check(CLI::IsMember({"bdt", "wf", "greedy", "mixed-fm"}));
    run_cmd->add_option("--iters", run_args.iters, "Maximum iterations")->check(CLI::PositiveNumber);
    run_cmd->add_option("--eps", run_args.eps, "Convergence tolerance, W")->check(CLI::PositiveNumber);
    run_cmd->add_option("--window", run_args.window, "Consecutive settled steps")->check(CLI::PositiveNumber);
    run_cmd->add_option("--tau", run_args.tau, "Rate differential threshold, bit/s");
    run_cmd->add_option("--z", run_args.z, "Power scaling factor");
    run_cmd->add_option("--out", run_args.out, "Output directory (default $HETNET_OUT_DIR or ./out)");

    ExperimentArgs exp_args;
    exp_args.out = default_out_dir();
    auto* exp_cmd = app.add_subcommand("experiment", "Monte Carlo sweep");
    exp_cmd->add_option("--preset", exp_args.preset, "Preset name")
        ->required()
        ->check(CLI::IsMember(preset_names()));
    exp_cmd->add_option("--trials", exp_args.trials, "Trials per sweep point")->check(CLI::PositiveNumber);
    exp_cmd->add_option("--seed", exp_args.seed, "Base seed");
    exp_cmd->add_option("--threads", exp_args.threads, "Worker threads (0: all cores)")
        ->check(CLI::NonNegativeNumber);
    exp_cmd->add_option("--out", exp_args.out, "Output directory (default $HETNET_OUT_DIR or ./out)");

    std::string example_case = "high";
    std::string example_out;
    auto* ex_cmd = app.add_subcommand("example", "Write the two-UE worked example scenario");
    ex_cmd->add_option("--case", example_case, "Backhaul regime")->check(CLI::IsMember({"high", "limited"}));
    ex_cmd->add_option("--out", example_out, "Scenario JSON file")->required();

    GeneratorParams gen;
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("generate", "Draw a random scenario");
    gen_cmd->add_option("--seed", gen.seed, "Seed");
    gen_cmd->add_option("--ues", gen.n_ues, "Dual-link UEs");
    gen_cmd->add_option("--fm-ues", gen.n_fixed_sinr_ues, "Single-link fixed-SINR UEs");
    gen_cmd->add_option("--relays", gen.n_relays, "Relays");
    gen_cmd->add_option("--picos", gen.n_picos, "Picocells");
    gen_cmd->add_option("--backhaul-scale", gen.backhaul_scale, "Small-cell backhaul scale L");
    gen_cmd->add_option("--tau", gen.tau, "Rate differential threshold, bit/s");
    gen_cmd->add_option("--z", gen.z, "Power scaling factor");
    gen_cmd->add_option("--out", gen_out, "Scenario JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run_cmd) return cmd_run(run_args);
        if (*exp_cmd) return cmd_experiment(exp_args);
        if (*ex_cmd) {
            const auto which = example_case == "high" ? WorkedExampleCase::HighBackhaul
                                                      : WorkedExampleCase::LimitedBackhaul;
            save_scenario(worked_example(which), example_out);
            return kExitOk;
        }
        if (*gen_cmd) {
            save_scenario(generate(gen), gen_out);
            return kExitOk;
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        for (const auto& v : e.violations) std::cerr << "  - " << v << '\n';
        return kExitValidation;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitUsage;
}
