#include "hetnet/sim_engine.hpp"

#include <cmath>
#include <set>

namespace hetnet {

namespace {

double power_distance(const PowerState& a, const PowerState& b) {
    if (a.p1.size() == 0) return 0.0;
    return std::max((a.p1 - b.p1).lpNorm<Eigen::Infinity>(), (a.p2 - b.p2).lpNorm<Eigen::Infinity>());
}

}  // namespace

std::vector<Policy> assign_policies(const Scenario& s, Policy dual_policy) {
    std::vector<Policy> out;
    out.reserve(s.size());
    for (const auto& u : s.ues) out.push_back(u.dual() ? dual_policy : Policy::FixedSinr);
    return out;
}

PowerState initial_state(const Scenario& s, const CrossGainMatrices& m, const RunOptions& options) {
    const auto n = static_cast<Eigen::Index>(s.size());
    VectorXd p1(n), p2(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Ue& u = s.ues[i];
        p1(i) = u.p_max / 2.0;
        p2(i) = u.dual() ? u.p_max / 2.0 : 0.0;
    }
    if (options.initial_p1) p1 = *options.initial_p1;
    if (options.initial_p2) p2 = *options.initial_p2;
    if (p1.size() != n || p2.size() != n) throw std::invalid_argument("initial powers: dimension mismatch");
    return evaluate_powers(m, p1, p2);
}

PowerState step(const Scenario& s, const CrossGainMatrices& m, const PowerState& now, const BackhaulReport& report,
                std::span<const Policy> policies) {
    const auto n = static_cast<Eigen::Index>(s.size());
    if (static_cast<Eigen::Index>(policies.size()) != n) throw std::invalid_argument("step: one policy per UE required");
    VectorXd p1(n), p2(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Ue& u = s.ues[i];
        const PowerSplit current{now.p1(i), now.p2(i)};
        PowerSplit next;
        switch (policies[i]) {
            case Policy::FixedSinr:
                if (!u.fixed_sinr_target) throw std::invalid_argument("step: UE without SINR target on fixed-SINR policy");
                next = PowerSplit{fm_update(now.e1(i), *u.fixed_sinr_target, u.p_max), 0.0};
                break;
            case Policy::Waterfilling:
                next = waterfill(u.p_max, now.e1(i), now.e2(i), m.w1(i), m.w2(i));
                break;
            case Policy::Greedy:
                next = greedy_update(u.p_max, now.e1(i), now.e2(i), m.w1(i), m.w2(i), headroom(report.v1(i)),
                                     headroom(report.v2(i)));
                break;
            case Policy::Bdt:
                next = bdt_update(report.ue_states[i], current, u.p_max, now.e1(i), now.e2(i), m.w1(i), m.w2(i),
                                  s.z_factor);
                break;
        }
        const double slack = 1e-12 * u.p_max;
        if (!(next.p1 >= 0.0 && next.p2 >= 0.0 && next.total() <= u.p_max + slack))
            throw std::logic_error("step: policy produced an infeasible allocation for UE " + std::to_string(u.id));
        p1(i) = next.p1;
        p2(i) = next.p2;
    }
    return evaluate_powers(m, p1, p2);
}

PowerState step(const Scenario& s, const CrossGainMatrices& m, const PowerState& now,
                std::span<const Policy> policies) {
    return step(s, m, now, assess_backhaul(s, now.rate1, now.rate2), policies);
}

Trace run(const Scenario& s, std::span<const Policy> policies, const RunOptions& options) {
    if (options.max_iter < 1) throw std::invalid_argument("run: max_iter must be >= 1");
    if (options.window < 1) throw std::invalid_argument("run: window must be >= 1");
    const CrossGainMatrices m = build_matrices(s);
    Trace trace;
    trace.states.push_back(initial_state(s, m, options));

    if (s.size() == 0) {
        trace.reports.push_back(assess_backhaul(s, trace.states.back().rate1, trace.states.back().rate2));
        trace.verdict = Verdict{Verdict::Kind::Converged, 0, 0};
        trace.metrics = metrics(trace, s);
        return trace;
    }

    int streak = 0;
    std::optional<int> period;
    for (int k = 0; k < options.max_iter; ++k) {
        const PowerState& now = trace.states.back();
        trace.reports.push_back(assess_backhaul(s, now.rate1, now.rate2));
        PowerState next = step(s, m, now, trace.reports.back(), policies);

        const double moved = power_distance(next, now);
        if (moved < options.eps) {
            ++streak;
        } else {
            streak = 0;
            for (int j = k - 1; j >= 0; --j) {
                if (power_distance(next, trace.states[j]) < options.eps) {
                    period = k + 1 - j;
                    break;
                }
            }
        }
        trace.states.push_back(std::move(next));
        if (streak >= options.window) {
            trace.verdict = Verdict{Verdict::Kind::Converged, k + 1 - options.window, 0};
            break;
        }
    }
    const PowerState& last = trace.states.back();
    trace.reports.push_back(assess_backhaul(s, last.rate1, last.rate2));

    if (!trace.converged()) {
        trace.verdict = period ? Verdict{Verdict::Kind::Oscillating, 0, *period}
                               : Verdict{Verdict::Kind::MaxIterations, 0, 0};
    }
    trace.metrics = metrics(trace, s);
    return trace;
}

Trace run(const Scenario& s, Policy dual_policy, const RunOptions& options) {
    const auto policies = assign_policies(s, dual_policy);
    return run(s, policies, options);
}

double bandwidth_in_use(const Scenario& s) {
    std::set<int> used;
    for (const auto& u : s.ues) {
        used.insert(u.chan_1);
        if (u.chan_2) used.insert(*u.chan_2);
    }
    double total = 0.0;
    for (int c : used) total += s.channel(c).bandwidth;
    return total;
}

RunMetrics metrics(const Trace& trace, const Scenario& s) {
    if (trace.states.empty() || trace.reports.empty()) throw std::invalid_argument("metrics: empty trace");
    RunMetrics out;
    const PowerState& last = trace.states.back();
    out.eta_n_final = trace.reports.back().eta_n;
    const double bw = bandwidth_in_use(s);
    out.eta_n_normalized = bw > 0.0 ? out.eta_n_final / bw : 0.0;
    out.avg_total_power = last.p1.size() > 0 ? (last.p1 + last.p2).mean() : 0.0;
    out.iterations_run = static_cast<int>(trace.states.size()) - 1;
    return out;
}

}  // namespace hetnet
