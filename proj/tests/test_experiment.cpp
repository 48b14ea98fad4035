#include <catch_amalgamated.hpp>

#include <sstream>

#include "hetnet/experiment.hpp"
#include "hetnet/scenario_gen.hpp"
#include "hetnet/trace_io.hpp"

using namespace hetnet;

namespace {

MonteCarloConfig small_config() {
    MonteCarloConfig cfg = preset_config("fig4", 4, 3);
    cfg.sweep.resize(2);
    return cfg;
}

std::string csv(const MonteCarloResult& r) {
    std::ostringstream os;
    write_trial_csv(os, r.trials);
    write_summary_csv(os, r.summary);
    return os.str();
}

}  // namespace

TEST_CASE("monte carlo is deterministic and thread-count independent", "[experiment]") {
    MonteCarloConfig a = small_config();
    a.threads = 1;
    MonteCarloConfig b = small_config();
    b.threads = 3;
    CHECK(csv(monte_carlo(a)) == csv(monte_carlo(a)));
    CHECK(csv(monte_carlo(a)) == csv(monte_carlo(b)));
}

TEST_CASE("trial ordering and row counts", "[experiment]") {
    const MonteCarloResult r = monte_carlo(small_config());
    REQUIRE(r.trials.size() == 2 * 4 * 3);
    CHECK(r.summary.size() == 2 * 3);
    CHECK(r.trials[0].sweep_value == "0.1");
    CHECK(r.trials[0].policy == Policy::Bdt);
    CHECK(r.trials[1].policy == Policy::Waterfilling);
    CHECK(r.trials[3].trial == 1);
    // Each trial sees the same topology at every sweep point.
    CHECK(r.trials[0].scenario_seed == r.trials[12].scenario_seed);
    CHECK(r.trials[0].scenario_seed != r.trials[3].scenario_seed);
}

TEST_CASE("summary statistics", "[experiment]") {
    std::vector<TrialRow> rows(4);
    const double power[] = {1.0, 2.0, 3.0, 4.0};
    for (int i = 0; i < 4; ++i) {
        rows[i].preset = "x";
        rows[i].avg_total_power = power[i];
        rows[i].eta_n_normalized = 2.0;
        rows[i].converged = i < 3;
    }
    const auto s = summarize(rows);
    REQUIRE(s.size() == 1);
    CHECK(s[0].trials == 4);
    CHECK(s[0].avg_total_power_mean == 2.5);
    CHECK(s[0].avg_total_power_se == Catch::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(s[0].eta_n_normalized_se == 0.0);
    CHECK(s[0].convergence_pct == 75.0);
}

TEST_CASE("trial CSV is re-parseable", "[experiment][trace_io]") {
    const MonteCarloResult r = monte_carlo(small_config());
    std::ostringstream os;
    write_trial_csv(os, r.trials);
    std::istringstream is(os.str());
    const auto back = read_trial_csv(is);
    REQUIRE(back.size() == r.trials.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].preset == r.trials[i].preset);
        CHECK(back[i].sweep_value == r.trials[i].sweep_value);
        CHECK(back[i].policy == r.trials[i].policy);
        CHECK(back[i].trial == r.trials[i].trial);
        CHECK(back[i].eta_n_normalized == r.trials[i].eta_n_normalized);
        CHECK(back[i].avg_total_power == r.trials[i].avg_total_power);
        CHECK(back[i].converged == r.trials[i].converged);
    }
    std::istringstream bad("preset,policy\n");
    CHECK_THROWS_AS(read_trial_csv(bad), std::invalid_argument);
}

TEST_CASE("CSV headers", "[trace_io]") {
    std::ostringstream os;
    write_summary_csv(os, {});
    CHECK(os.str() ==
          "preset,sweep_var,sweep_value,policy,trials,eta_n_normalized_mean,eta_n_normalized_se,"
          "avg_total_power_mean,avg_total_power_se,convergence_pct\n");
    std::ostringstream ts;
    write_trial_csv(ts, {});
    CHECK(ts.str() == "preset,sweep_var,sweep_value,policy,trial,eta_n_normalized,avg_total_power,converged\n");
}

TEST_CASE("trace CSV and JSON", "[trace_io]") {
    const Scenario s = worked_example(WorkedExampleCase::HighBackhaul);
    const Trace t = run(s, Policy::Bdt);
    std::ostringstream os;
    write_trace_csv(os, t);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "k,ue1_p1,ue1_p2,ue1_rate1,ue1_rate2,ue1_state,ue2_p1,ue2_p2,ue2_rate1,ue2_rate2,ue2_state,eta_n");
    int lines = 0;
    for (std::string line; std::getline(is, line);) ++lines;
    CHECK(lines == static_cast<int>(t.states.size()));
    const auto doc = trace_to_json(t);
    CHECK(doc["metrics"]["verdict"] == "converged");
    CHECK(doc["iterations"].size() == t.states.size());
}

TEST_CASE("presets", "[experiment]") {
    CHECK(preset_names() == std::vector<std::string>{"fig2b", "fig3", "fig4", "fig5"});
    CHECK(preset_config("fig2b", 1, 1).sweep.size() == 20);
    CHECK(preset_config("fig2b", 1, 1).run.max_iter == 100);
    CHECK(preset_config("fig3", 1, 1).run.max_iter == 50);
    CHECK(preset_config("fig5", 1, 1).sweep.size() == 16);
    CHECK_THROWS_AS(preset_config("fig9", 1, 1), std::invalid_argument);
    MonteCarloConfig cfg = preset_config("fig4", 1, 1);
    cfg.trials = 0;
    CHECK_THROWS_AS(monte_carlo(cfg), std::invalid_argument);
    CHECK(policy_from_string("greedy") == Policy::Greedy);
    CHECK_THROWS_AS(policy_from_string("max"), std::invalid_argument);
}

TEST_CASE("fig4 sweep scales small-cell backhaul", "[experiment]") {
    MonteCarloConfig cfg = preset_config("fig4", 1, 1);
    GeneratorParams g = cfg.base;
    RunOptions o;
    cfg.sweep[0].apply(g, o);
    CHECK(generate(g).poa(1).backhaul_capacity == Catch::Approx(10e6));
}
