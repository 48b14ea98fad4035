#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hetnet/power_control.hpp"
#include "hetnet/scenario_gen.hpp"
#include "hetnet/sim_engine.hpp"

namespace hetnet {

/// One point of a parameter sweep: a label for the tidy output plus the
/// change it applies to the base generator/run configuration.
struct SweepPoint {
    std::string var;
    std::string value;
    std::function<void(GeneratorParams&, RunOptions&)> apply;
};

struct MonteCarloConfig {
    std::string preset = "custom";
    GeneratorParams base;
    RunOptions run;
    std::vector<Policy> policies = {Policy::Bdt, Policy::Waterfilling, Policy::Greedy};
    std::vector<SweepPoint> sweep;  // empty: a single unlabelled point
    int trials = 1;
    std::uint64_t seed = 1;
    // Redraw each trial's topology until the waterfilling iteration matrix
    // has spectral radius < 1.
    bool require_stable = false;
    int max_redraws = 200;
    int threads = 0;  // 0: hardware concurrency
};

struct TrialRow {
    std::string preset;
    std::string sweep_var;
    std::string sweep_value;
    Policy policy = Policy::Bdt;
    int trial = 0;
    double eta_n_normalized = 0.0;
    double avg_total_power = 0.0;
    bool converged = false;
    std::uint64_t scenario_seed = 0;
    double spectral_radius = 0.0;
};

struct SummaryRow {
    std::string preset;
    std::string sweep_var;
    std::string sweep_value;
    Policy policy = Policy::Bdt;
    int trials = 0;
    double eta_n_normalized_mean = 0.0;
    double eta_n_normalized_se = 0.0;
    double avg_total_power_mean = 0.0;
    double avg_total_power_se = 0.0;
    double convergence_pct = 0.0;
};

struct MonteCarloResult {
    std::vector<TrialRow> trials;      // ordered by (sweep point, trial, policy)
    std::vector<SummaryRow> summary;   // ordered by (sweep point, policy)
};

/// Seed of a trial's scenario; independent of the sweep point so that every
/// point and policy sees the same topologies.
std::uint64_t trial_seed(std::uint64_t base, int trial, int redraw);

MonteCarloResult monte_carlo(const MonteCarloConfig& config);

std::vector<SummaryRow> summarize(const std::vector<TrialRow>& rows);

/// Experiment presets: fig2b, fig3, fig4, fig5.
MonteCarloConfig preset_config(const std::string& name, int trials, std::uint64_t seed);
std::vector<std::string> preset_names();

Policy policy_from_string(const std::string& name);

}  // namespace hetnet
