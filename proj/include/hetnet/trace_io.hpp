#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hetnet/experiment.hpp"
#include "hetnet/trace.hpp"

namespace hetnet {

// Trace CSV: k, then per UE i (1-based) ue<i>_p1, ue<i>_p2, ue<i>_rate1,
// ue<i>_rate2, ue<i>_state, then eta_n.
void write_trace_csv(std::ostream& out, const Trace& trace);
nlohmann::json trace_to_json(const Trace& trace);
nlohmann::json metrics_to_json(const Trace& trace);

inline const std::vector<std::string>& trial_csv_header() {
    static const std::vector<std::string> h = {"preset", "sweep_var", "sweep_value", "policy",
                                               "trial",  "eta_n_normalized", "avg_total_power", "converged"};
    return h;
}

inline const std::vector<std::string>& summary_csv_header() {
    static const std::vector<std::string> h = {
        "preset",          "sweep_var",          "sweep_value",        "policy",
        "trials",          "eta_n_normalized_mean", "eta_n_normalized_se", "avg_total_power_mean",
        "avg_total_power_se", "convergence_pct"};
    return h;
}

void write_trial_csv(std::ostream& out, const std::vector<TrialRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

/// Parses a file produced by write_trial_csv. Throws std::invalid_argument
/// on a header or field mismatch.
std::vector<TrialRow> read_trial_csv(std::istream& in);

}  // namespace hetnet
