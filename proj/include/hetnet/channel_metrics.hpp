#pragma once

#include <Eigen/Dense>

#include "hetnet/net_model.hpp"

namespace hetnet {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Normalized cross-link gains. Index order follows UE ids (row i is UE i+1).
///
/// The first subscript names the interfering link, the second the victim
/// link: f21(i, j) scales UE j's second-link power into UE i's first-link
/// effective interference, so that
///   e1 = d1 + f11 * p1 + f21 * p2,
///   e2 = d2 + f22 * p2 + f12 * p1.
/// Entries vanish on the diagonal and wherever the two links use different
/// channels. Absent second links contribute zero rows/columns, zero noise and
/// zero bandwidth.
struct CrossGainMatrices {
    MatrixXd f11, f12, f21, f22;
    VectorXd d1, d2;
    VectorXd w1, w2;
    VectorXd lambda;  // 1 / (w1 + w2)

    Eigen::Index size() const { return d1.size(); }
};

struct PowerState {
    VectorXd p1, p2;
    VectorXd e1, e2;
    VectorXd sinr1, sinr2;
    VectorXd rate1, rate2;
};

CrossGainMatrices build_matrices(const Scenario& s);

struct Interference {
    VectorXd e1, e2;
};

Interference effective_interference(const CrossGainMatrices& m, const VectorXd& p1, const VectorXd& p2);

struct LinkRates {
    VectorXd rate1, rate2;
};

/// Shannon rates in bit/s. Links with zero bandwidth (absent) carry rate 0.
LinkRates link_rates(const CrossGainMatrices& m, const VectorXd& p1, const VectorXd& p2,
                     const VectorXd& e1, const VectorXd& e2);

/// Interference, SINR and rate for a power vector pair.
PowerState evaluate_powers(const CrossGainMatrices& m, const VectorXd& p1, const VectorXd& p2);

VectorXd p_max_vector(const Scenario& s);

}  // namespace hetnet
