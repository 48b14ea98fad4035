#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hetnet/net_model.hpp"

namespace hetnet {

/// Joint backhaul condition of a UE's two PoAs. For each link the rate
/// differential V falls in one of three bands: V >= 0 (headroom),
/// -tau <= V < 0 (tolerable overload) and V < -tau (overloaded).
enum class BackhaulState : int { S1 = 1, S2, S3, S4, S5, S6, S7, S8, S9 };

std::string to_string(BackhaulState s);

struct BackhaulReport {
    double eta_n = 0.0;            // end-to-end network capacity, bit/s
    double gamma_relay_sum = 0.0;  // relay traffic forwarded through the macrocell
    std::map<int, double> v;       // rate differential per PoA id
    std::map<int, double> demand;  // aggregate access rate per PoA id
    Eigen::VectorXd v1, v2;        // V of each UE's PoA on link 1/2; +inf for an absent link
    std::vector<BackhaulState> ue_states;
};

/// Max-flow value of the two-tier topology: picocells and the macrocell
/// forward straight to the backbone, relays forward through the macrocell.
double network_capacity(const Scenario& s, const Eigen::VectorXd& rate1, const Eigen::VectorXd& rate2);

/// Fills v, demand, gamma_relay_sum, v1 and v2.
BackhaulReport rate_differentials(const Scenario& s, const Eigen::VectorXd& rate1,
                                  const Eigen::VectorXd& rate2);

/// rate_differentials plus eta_n and the per-UE state classification.
BackhaulReport assess_backhaul(const Scenario& s, const Eigen::VectorXd& rate1, const Eigen::VectorXd& rate2);

BackhaulState classify_state(double v1, double v2, double tau);

/// Achievable rate improvement at a PoA: the non-negative part of V.
inline double headroom(double v) { return v > 0.0 ? v : 0.0; }

}  // namespace hetnet
