#include "hetnet/backhaul_flow.hpp"

#include <algorithm>
#include <limits>

namespace hetnet {

namespace {

std::map<int, double> aggregate_demand(const Scenario& s, const Eigen::VectorXd& rate1,
                                       const Eigen::VectorXd& rate2) {
    const auto n = static_cast<Eigen::Index>(s.size());
    if (rate1.size() != n || rate2.size() != n) throw std::invalid_argument("rate vector dimension mismatch");
    std::map<int, double> demand;
    for (const auto& p : s.poas) demand[p.id] = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Ue& u = s.ues[i];
        demand[u.poa_1] += rate1(i);
        if (u.poa_2) demand[*u.poa_2] += rate2(i);
    }
    return demand;
}

// 0: V >= 0, 1: -tau <= V < 0, 2: V < -tau
int band(double v, double tau) {
    if (v >= 0.0) return 0;
    if (v >= -tau) return 1;
    return 2;
}

}  // namespace

std::string to_string(BackhaulState s) { return "S" + std::to_string(static_cast<int>(s)); }

double network_capacity(const Scenario& s, const Eigen::VectorXd& rate1, const Eigen::VectorXd& rate2) {
    const auto demand = aggregate_demand(s, rate1, rate2);
    double through_macro = 0.0;
    double direct = 0.0;
    double macro_capacity = 0.0;
    for (const auto& p : s.poas) {
        const double load = demand.at(p.id);
        switch (p.kind) {
            case PoaKind::Relay: through_macro += std::min(p.backhaul_capacity, load); break;
            case PoaKind::Picocell: direct += std::min(p.backhaul_capacity, load); break;
            case PoaKind::Macrocell:
                through_macro += load;
                macro_capacity = p.backhaul_capacity;
                break;
        }
    }
    return std::min(macro_capacity, through_macro) + direct;
}

BackhaulReport rate_differentials(const Scenario& s, const Eigen::VectorXd& rate1,
                                  const Eigen::VectorXd& rate2) {
    BackhaulReport r;
    r.demand = aggregate_demand(s, rate1, rate2);

    const Poa& macro = s.poa(s.macrocell_id());
    for (const auto& p : s.poas)
        if (p.kind == PoaKind::Relay) r.gamma_relay_sum += std::min(p.backhaul_capacity, r.demand.at(p.id));

    const double v_macro = macro.backhaul_capacity - r.demand.at(macro.id) - r.gamma_relay_sum;
    for (const auto& p : s.poas) {
        switch (p.kind) {
            case PoaKind::Picocell: r.v[p.id] = p.backhaul_capacity - r.demand.at(p.id); break;
            case PoaKind::Relay:
                r.v[p.id] = std::min(p.backhaul_capacity, headroom(v_macro)) - r.demand.at(p.id);
                break;
            case PoaKind::Macrocell: r.v[p.id] = v_macro; break;
        }
    }

    const auto n = static_cast<Eigen::Index>(s.size());
    r.v1 = r.v2 = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
    for (Eigen::Index i = 0; i < n; ++i) {
        const Ue& u = s.ues[i];
        r.v1(i) = r.v.at(u.poa_1);
        if (u.poa_2) r.v2(i) = r.v.at(*u.poa_2);
    }
    return r;
}

BackhaulReport assess_backhaul(const Scenario& s, const Eigen::VectorXd& rate1, const Eigen::VectorXd& rate2) {
    BackhaulReport r = rate_differentials(s, rate1, rate2);
    r.eta_n = network_capacity(s, rate1, rate2);
    r.ue_states.reserve(s.size());
    for (Eigen::Index i = 0; i < r.v1.size(); ++i) r.ue_states.push_back(classify_state(r.v1(i), r.v2(i), s.tau));
    return r;
}

BackhaulState classify_state(double v1, double v2, double tau) {
    // rows: band of V1, columns: band of V2
    static constexpr BackhaulState table[3][3] = {
        {BackhaulState::S1, BackhaulState::S3, BackhaulState::S5},
        {BackhaulState::S2, BackhaulState::S4, BackhaulState::S7},
        {BackhaulState::S6, BackhaulState::S8, BackhaulState::S9},
    };
    return table[band(v1, tau)][band(v2, tau)];
}

}  // namespace hetnet
