#pragma once

#include <vector>

#include "hetnet/backhaul_flow.hpp"
#include "hetnet/channel_metrics.hpp"

namespace hetnet {

struct Verdict {
    enum class Kind { Converged, Oscillating, MaxIterations };
    Kind kind = Kind::MaxIterations;
    int iteration = 0;  // Converged: first iteration of the settled stretch
    int period = 0;     // Oscillating: distance back to the revisited iterate
};

const char* to_string(Verdict::Kind kind);

struct RunMetrics {
    double eta_n_final = 0.0;       // bit/s
    double eta_n_normalized = 0.0;  // bit/s/Hz over the bandwidth in use
    double avg_total_power = 0.0;   // W, mean over UEs of p1 + p2
    int iterations_run = 0;
};

/// states[k] and reports[k] describe iteration k; reports[k] is what the UEs
/// observe when choosing the powers of iteration k + 1.
struct Trace {
    std::vector<PowerState> states;
    std::vector<BackhaulReport> reports;
    Verdict verdict;
    RunMetrics metrics;

    bool converged() const { return verdict.kind == Verdict::Kind::Converged; }
};

}  // namespace hetnet
