#include "hetnet/power_control.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hetnet {

std::string to_string(Policy p) {
    switch (p) {
        case Policy::Waterfilling: return "wf";
        case Policy::Bdt: return "bdt";
        case Policy::Greedy: return "greedy";
        case Policy::FixedSinr: return "fm";
    }
    return "unknown";
}

PowerSplit waterfill(double p_max, double e1, double e2, double w1, double w2) {
    if (!(e1 > 0.0) || !(e2 > 0.0)) throw std::invalid_argument("waterfill: effective interference must be > 0");
    if (!(w1 > 0.0) || !(w2 > 0.0)) throw std::invalid_argument("waterfill: bandwidth must be > 0");
    const double level = std::max(0.0, w1 * p_max - w2 * e1 + w1 * e2) / (w1 + w2);
    const double p1 = std::min(p_max, level);
    return PowerSplit{p1, p_max - p1};
}

double rate_cap_power(double e, double w, double r) {
    if (r <= 0.0) return 0.0;
    return e * std::expm1(r / w * std::numbers::ln2);
}

PowerSplit greedy_update(double p_max, double e1, double e2, double w1, double w2, double v1_plus,
                         double v2_plus) {
    const double cap1 = rate_cap_power(e1, w1, v1_plus);
    const double cap2 = rate_cap_power(e2, w2, v2_plus);
    // Both headrooms reachable within budget: spend exactly what they need.
    if (cap1 + cap2 <= p_max) return PowerSplit{cap1, cap2};

    // Otherwise the whole budget is used. Within the caps the objective is
    // the plain sum rate, concave along p1 + p2 = p_max, so the optimum is the
    // waterfilling split projected onto the capped interval.
    PowerSplit wf = waterfill(p_max, e1, e2, w1, w2);
    if (wf.p1 > cap1) return PowerSplit{cap1, p_max - cap1};
    if (wf.p2 > cap2) return PowerSplit{p_max - cap2, cap2};
    return wf;
}

PowerSplit bdt_update(BackhaulState state, PowerSplit now, double p_max, double e1, double e2, double w1,
                      double w2, double z) {
    switch (state) {
        case BackhaulState::S1: return waterfill(p_max, e1, e2, w1, w2);
        case BackhaulState::S2: return PowerSplit{now.p1, p_max - now.p1};
        case BackhaulState::S3: return PowerSplit{p_max - now.p2, now.p2};
        case BackhaulState::S4: return now;
        case BackhaulState::S5: return PowerSplit{p_max - z * now.p2, z * now.p2};
        case BackhaulState::S6: return PowerSplit{z * now.p1, p_max - z * now.p1};
        case BackhaulState::S7: return PowerSplit{now.p1, z * now.p2};
        case BackhaulState::S8: return PowerSplit{z * now.p1, now.p2};
        case BackhaulState::S9: return PowerSplit{z * now.p1, z * now.p2};
    }
    throw std::logic_error("bdt_update: unhandled state");
}

double fm_update(double e, double beta, double p_max) { return std::min(beta * e, p_max); }

}  // namespace hetnet
