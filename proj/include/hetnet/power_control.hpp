#pragma once

#include <string>

#include "hetnet/backhaul_flow.hpp"

namespace hetnet {

enum class Policy { Waterfilling, Bdt, Greedy, FixedSinr };

std::string to_string(Policy p);

struct PowerSplit {
    double p1 = 0.0;
    double p2 = 0.0;

    double total() const { return p1 + p2; }
};

/// Rate-maximizing split of the full budget over two parallel channels with
/// effective interference e1, e2 and bandwidths w1, w2. The first link gets
/// min(p_max, (w1*p_max - w2*e1 + w1*e2)^+ / (w1 + w2)); the second gets the
/// rest of the budget.
PowerSplit waterfill(double p_max, double e1, double e2, double w1, double w2);

/// Minimal power reaching rate r on a link: e * (2^(r/w) - 1).
double rate_cap_power(double e, double w, double r);

/// Locally optimal reaction to the current backhaul headroom: maximize
///   min(v1_plus, rate1) + min(v2_plus, rate2)
/// over the budget, then use the least total power reaching that optimum.
/// Solved exactly as waterfilling with per-link power caps.
PowerSplit greedy_update(double p_max, double e1, double e2, double w1, double w2, double v1_plus,
                         double v2_plus);

/// One BDT adaptation step for a UE whose backhaul is in `state`.
PowerSplit bdt_update(BackhaulState state, PowerSplit now, double p_max, double e1, double e2, double w1,
                      double w2, double z);

/// Fixed-target-SINR update beta * e, clipped to p_max.
double fm_update(double e, double beta, double p_max);

}  // namespace hetnet
