#include "hetnet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

#include "hetnet/equilibrium.hpp"

namespace hetnet {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string format_number(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

struct Task {
    std::size_t point;
    int trial;
};

struct TaskResult {
    std::vector<TrialRow> rows;
};

TaskResult run_task(const MonteCarloConfig& cfg, const SweepPoint* point, int trial) {
    GeneratorParams params = cfg.base;
    RunOptions options = cfg.run;
    if (point && point->apply) point->apply(params, options);

    Scenario scenario;
    double rho = 0.0;
    std::uint64_t seed = 0;
    bool accepted = false;
    const int redraws = cfg.require_stable ? cfg.max_redraws : 1;
    for (int r = 0; r < redraws && !accepted; ++r) {
        seed = trial_seed(cfg.seed, trial, r);
        params.seed = seed;
        scenario = generate(params);
        const CrossGainMatrices m = build_matrices(scenario);
        rho = spectral_radius(build_system(m, p_max_vector(scenario)).m);
        accepted = !cfg.require_stable || rho < 1.0;
    }
    if (!accepted) throw NumericalError("monte_carlo: no stable topology found within the redraw budget");

    TaskResult out;
    for (Policy policy : cfg.policies) {
        const Trace trace = run(scenario, policy, options);
        TrialRow row;
        row.preset = cfg.preset;
        row.sweep_var = point ? point->var : "";
        row.sweep_value = point ? point->value : "";
        row.policy = policy;
        row.trial = trial;
        row.eta_n_normalized = trace.metrics.eta_n_normalized;
        row.avg_total_power = trace.metrics.avg_total_power;
        row.converged = trace.converged();
        row.scenario_seed = seed;
        row.spectral_radius = rho;
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t base, int trial, int redraw) {
    return splitmix64(splitmix64(base) ^ splitmix64(static_cast<std::uint64_t>(trial) << 20 ^
                                                    static_cast<std::uint64_t>(redraw)));
}

MonteCarloResult monte_carlo(const MonteCarloConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("monte_carlo: trials must be >= 1");
    const std::size_t points = std::max<std::size_t>(1, config.sweep.size());
    std::vector<Task> tasks;
    for (std::size_t p = 0; p < points; ++p)
        for (int t = 0; t < config.trials; ++t) tasks.push_back(Task{p, t});

    std::vector<TaskResult> results(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            try {
                const SweepPoint* point = config.sweep.empty() ? nullptr : &config.sweep[tasks[i].point];
                results[i] = run_task(config, point, tasks[i].trial);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    MonteCarloResult out;
    for (auto& r : results)
        for (auto& row : r.rows) out.trials.push_back(std::move(row));
    out.summary = summarize(out.trials);
    return out;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRow>& rows) {
    // Keep first-appearance order of (sweep point, policy).
    std::vector<std::tuple<std::string, std::string, std::string, Policy>> order;
    std::map<std::tuple<std::string, std::string, std::string, Policy>, std::vector<const TrialRow*>> groups;
    for (const auto& r : rows) {
        auto key = std::make_tuple(r.preset, r.sweep_var, r.sweep_value, r.policy);
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) order.push_back(key);
        it->second.push_back(&r);
    }
    auto mean_se = [](const std::vector<double>& xs) {
        const double n = static_cast<double>(xs.size());
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= n;
        if (xs.size() < 2) return std::make_pair(mean, 0.0);
        double ss = 0.0;
        for (double x : xs) ss += (x - mean) * (x - mean);
        return std::make_pair(mean, std::sqrt(ss / (n - 1.0) / n));
    };

    std::vector<SummaryRow> out;
    for (const auto& key : order) {
        const auto& members = groups.at(key);
        std::vector<double> rate, power;
        int converged = 0;
        for (const TrialRow* r : members) {
            rate.push_back(r->eta_n_normalized);
            power.push_back(r->avg_total_power);
            converged += r->converged ? 1 : 0;
        }
        SummaryRow s;
        std::tie(s.preset, s.sweep_var, s.sweep_value, s.policy) = key;
        s.trials = static_cast<int>(members.size());
        std::tie(s.eta_n_normalized_mean, s.eta_n_normalized_se) = mean_se(rate);
        std::tie(s.avg_total_power_mean, s.avg_total_power_se) = mean_se(power);
        s.convergence_pct = 100.0 * converged / static_cast<double>(members.size());
        out.push_back(s);
    }
    return out;
}

Policy policy_from_string(const std::string& name) {
    if (name == "bdt") return Policy::Bdt;
    if (name == "wf") return Policy::Waterfilling;
    if (name == "greedy") return Policy::Greedy;
    if (name == "fm") return Policy::FixedSinr;
    throw std::invalid_argument("unknown policy '" + name + "'");
}

std::vector<std::string> preset_names() { return {"fig2b", "fig3", "fig4", "fig5"}; }

MonteCarloConfig preset_config(const std::string& name, int trials, std::uint64_t seed) {
    MonteCarloConfig cfg;
    cfg.preset = name;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.run.max_iter = 50;

    if (name == "fig2b") {
        cfg.run.max_iter = 100;
        cfg.require_stable = true;
        for (double tau_mbps : {1.0, 2.0, 5.0, 10.0, 20.0}) {
            for (double z : {0.5, 0.7, 0.9, 0.95}) {
                cfg.sweep.push_back(SweepPoint{
                    "tau_mbps|z", format_number(tau_mbps) + "|" + format_number(z),
                    [tau_mbps, z](GeneratorParams& g, RunOptions&) {
                        g.tau = tau_mbps * 1e6;
                        g.z = z;
                    }});
            }
        }
    } else if (name == "fig3") {
        for (int n : {4, 6, 8, 14, 21, 28, 42, 56}) {
            cfg.sweep.push_back(SweepPoint{"n_ues", std::to_string(n),
                                           [n](GeneratorParams& g, RunOptions&) { g.n_ues = n; }});
        }
    } else if (name == "fig4") {
        for (double l : {0.1, 0.2, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0}) {
            cfg.sweep.push_back(SweepPoint{"backhaul_scale", format_number(l),
                                           [l](GeneratorParams& g, RunOptions&) { g.backhaul_scale = l; }});
        }
    } else if (name == "fig5") {
        cfg.base.relay_backhaul = 50e6;
        cfg.base.pico_backhaul = 50e6;
        cfg.base.min_separation = 2.0 * cfg.base.radius;
        for (int cells = 1; cells <= 8; ++cells) {
            cfg.sweep.push_back(SweepPoint{"n_picos", std::to_string(cells), [cells](GeneratorParams& g, RunOptions&) {
                                               g.n_picos = cells;
                                               g.n_relays = 0;
                                               g.n_ues = 3 * cells;
                                           }});
        }
        for (int cells = 1; cells <= 8; ++cells) {
            cfg.sweep.push_back(SweepPoint{"n_relays", std::to_string(cells), [cells](GeneratorParams& g, RunOptions&) {
                                               g.n_relays = cells;
                                               g.n_picos = 0;
                                               g.n_ues = 3 * cells;
                                           }});
        }
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return cfg;
}

}  // namespace hetnet
