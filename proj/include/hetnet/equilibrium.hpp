#pragma once

#include <optional>

#include "hetnet/channel_metrics.hpp"
#include "hetnet/trace.hpp"

namespace hetnet {

/// Linear model of synchronous waterfilling with P2 = P_max - P1:
///   P1(k+1) = n_vec + m * P1(k)
/// with
///   m     = Lambda [W2 (F21 - F11) + W1 (F12 - F22)]
///   n_vec = Lambda [W1 P_max - W2 D1 + W1 D2 + (W1 F22 - W2 F21) P_max].
struct IterationSystem {
    MatrixXd m;
    VectorXd n_vec;
    double spectral_radius = 0.0;
    double spectral_radius_abs = 0.0;  // of the element-wise |m|
    std::optional<VectorXd> fixed_point_p1;
    bool interior = false;
};

struct Equilibrium {
    VectorXd p1, p2;
    bool interior = false;  // 0 < p1 < p_max element-wise
};

/// An affine iteration x <- offset + matrix * x.
struct AffineMap {
    MatrixXd matrix;
    VectorXd offset;
};

IterationSystem build_system(const CrossGainMatrices& m, const VectorXd& p_max);

/// Largest eigenvalue magnitude. Throws NumericalError if the eigen solver
/// does not converge.
double spectral_radius(const MatrixXd& m);

/// Solves (I - m) p1 = n_vec. Requires spectral_radius < 1; throws
/// std::domain_error otherwise and NumericalError on a numerically singular
/// system.
Equilibrium closed_form_equilibrium(const IterationSystem& sys, const VectorXd& p_max);

/// Fixed point of an affine map whose matrix has spectral radius < 1.
VectorXd affine_fixed_point(const AffineMap& map);

/// build_system plus fixed point and interiority when the spectral radius
/// allows it.
IterationSystem analyze_system(const CrossGainMatrices& m, const VectorXd& p_max);

/// Coexistence of dual-link waterfilling UEs (q = 0) with single-link
/// fixed-target UEs (q = 1, target beta):
///   P1 <- Qbar (N + M P1) + Q B (D1 + F11 P1).
/// Fixed-target UEs must not share a channel with any second link, so that
/// their interference is carried entirely by F11.
AffineMap mixed_population_system(const CrossGainMatrices& m, const IterationSystem& sys, const VectorXd& q,
                                  const VectorXd& beta);

/// Checks gamma(k + 2) > z^2 gamma(k) on `link` of UE index `ue` (0-based).
/// Returns std::nullopt when the precondition does not hold: the trace is too
/// short, the link's PoA had no overload (V >= 0) at k, or the UE did not
/// rescale that link by z between k and k + 1.
std::optional<bool> lemma_bound_check(const Trace& trace, double z, Eigen::Index ue, Link link, int k);

}  // namespace hetnet
