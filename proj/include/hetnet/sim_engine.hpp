#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hetnet/backhaul_flow.hpp"
#include "hetnet/channel_metrics.hpp"
#include "hetnet/net_model.hpp"
#include "hetnet/power_control.hpp"
#include "hetnet/trace.hpp"

namespace hetnet {

struct RunOptions {
    int max_iter = 100;
    double eps = 1e-6;  // W
    int window = 5;
    // Initial powers; default splits each budget equally over the two links
    // (single-link UEs start at half their budget).
    std::optional<VectorXd> initial_p1;
    std::optional<VectorXd> initial_p2;
};

/// Dual-link UEs follow `dual_policy`; single-link UEs always track their
/// fixed SINR target.
std::vector<Policy> assign_policies(const Scenario& s, Policy dual_policy);

PowerState initial_state(const Scenario& s, const CrossGainMatrices& m, const RunOptions& options = {});

/// One synchronous iteration: every UE reacts to `report`, computed from
/// `now`, and the interference/rates of the new powers are evaluated.
PowerState step(const Scenario& s, const CrossGainMatrices& m, const PowerState& now, const BackhaulReport& report,
                std::span<const Policy> policies);

PowerState step(const Scenario& s, const CrossGainMatrices& m, const PowerState& now,
                std::span<const Policy> policies);

Trace run(const Scenario& s, std::span<const Policy> policies, const RunOptions& options = {});
Trace run(const Scenario& s, Policy dual_policy, const RunOptions& options = {});

RunMetrics metrics(const Trace& trace, const Scenario& s);

/// Total bandwidth of the distinct channels carrying at least one link.
double bandwidth_in_use(const Scenario& s);

}  // namespace hetnet
