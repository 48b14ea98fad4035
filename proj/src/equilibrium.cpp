#include "hetnet/equilibrium.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace hetnet {

const char* to_string(Verdict::Kind kind) {
    switch (kind) {
        case Verdict::Kind::Converged: return "converged";
        case Verdict::Kind::Oscillating: return "oscillating";
        case Verdict::Kind::MaxIterations: return "max_iterations";
    }
    return "unknown";
}

IterationSystem build_system(const CrossGainMatrices& m, const VectorXd& p_max) {
    if (p_max.size() != m.size()) throw std::invalid_argument("build_system: dimension mismatch");
    const auto lambda = m.lambda.asDiagonal();
    const auto w1 = m.w1.asDiagonal();
    const auto w2 = m.w2.asDiagonal();

    IterationSystem sys;
    sys.m = lambda * (w2 * (m.f21 - m.f11) + w1 * (m.f12 - m.f22));
    sys.n_vec = lambda * (w1 * p_max - w2 * m.d1 + w1 * m.d2 + (w1 * m.f22 - w2 * m.f21) * p_max);
    sys.spectral_radius = spectral_radius(sys.m);
    sys.spectral_radius_abs = spectral_radius(sys.m.cwiseAbs());
    return sys;
}

double spectral_radius(const MatrixXd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("spectral_radius: matrix must be square");
    if (m.size() == 0) return 0.0;
    Eigen::EigenSolver<MatrixXd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw NumericalError("spectral_radius: eigenvalue iteration did not converge");
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

VectorXd affine_fixed_point(const AffineMap& map) {
    const auto n = map.matrix.rows();
    if (n == 0) return VectorXd::Zero(0);
    const MatrixXd a = MatrixXd::Identity(n, n) - map.matrix;
    Eigen::FullPivLU<MatrixXd> lu(a);
    if (!lu.isInvertible()) throw NumericalError("fixed point: I - M is singular");
    VectorXd x = lu.solve(map.offset);
    const double residual = (x - map.offset - map.matrix * x).lpNorm<Eigen::Infinity>();
    const double scale = std::max(1.0, x.lpNorm<Eigen::Infinity>());
    if (!std::isfinite(residual) || residual >= 1e-9 * scale)
        throw NumericalError("fixed point: linear solve residual too large");
    return x;
}

Equilibrium closed_form_equilibrium(const IterationSystem& sys, const VectorXd& p_max) {
    if (!(sys.spectral_radius < 1.0))
        throw std::domain_error("closed_form_equilibrium: spectral radius must be < 1");
    Equilibrium eq;
    eq.p1 = affine_fixed_point(AffineMap{sys.m, sys.n_vec});
    eq.p2 = p_max - eq.p1;
    eq.interior = ((eq.p1.array() > 0.0) && (eq.p1.array() < p_max.array())).all();
    return eq;
}

IterationSystem analyze_system(const CrossGainMatrices& m, const VectorXd& p_max) {
    IterationSystem sys = build_system(m, p_max);
    if (sys.spectral_radius < 1.0) {
        try {
            Equilibrium eq = closed_form_equilibrium(sys, p_max);
            sys.fixed_point_p1 = eq.p1;
            sys.interior = eq.interior;
        } catch (const NumericalError&) {
            // left absent
        }
    }
    return sys;
}

AffineMap mixed_population_system(const CrossGainMatrices& m, const IterationSystem& sys, const VectorXd& q,
                                  const VectorXd& beta) {
    const auto n = m.size();
    if (q.size() != n || beta.size() != n) throw std::invalid_argument("mixed_population_system: dimension mismatch");
    for (Eigen::Index i = 0; i < n; ++i) {
        const bool fixed = q(i) == 1.0;
        if (!fixed && q(i) != 0.0) throw std::invalid_argument("mixed_population_system: q must be 0/1");
        if (fixed != (beta(i) > 0.0))
            throw std::invalid_argument("mixed_population_system: beta must be positive exactly where q = 1");
        if (fixed && m.f21.row(i).cwiseAbs().maxCoeff() > 0.0)
            throw std::invalid_argument("mixed_population_system: fixed-target UE shares a channel with a second link");
    }
    const VectorXd qbar_vec = VectorXd::Ones(n) - q;
    const auto dual = qbar_vec.asDiagonal();
    const VectorXd qb = q.cwiseProduct(beta);
    AffineMap out;
    out.matrix = dual * sys.m + qb.asDiagonal() * m.f11;
    out.offset = dual * sys.n_vec + qb.asDiagonal() * m.d1;
    return out;
}

std::optional<bool> lemma_bound_check(const Trace& trace, double z, Eigen::Index ue, Link link, int k) {
    if (k < 0 || static_cast<std::size_t>(k) + 2 >= trace.states.size() ||
        static_cast<std::size_t>(k) >= trace.reports.size())
        return std::nullopt;
    const bool first = link == Link::First;
    const auto& now = trace.states[k];
    const auto& next = trace.states[k + 1];
    const auto& later = trace.states[k + 2];
    if (ue < 0 || ue >= now.p1.size()) return std::nullopt;

    const double v = first ? trace.reports[k].v1(ue) : trace.reports[k].v2(ue);
    if (!(v < 0.0)) return std::nullopt;

    const double p_now = first ? now.p1(ue) : now.p2(ue);
    const double p_next = first ? next.p1(ue) : next.p2(ue);
    if (!(p_now > 0.0) || std::abs(p_next - z * p_now) > 1e-12 * p_now) return std::nullopt;

    const double sinr_now = first ? now.sinr1(ue) : now.sinr2(ue);
    const double sinr_later = first ? later.sinr1(ue) : later.sinr2(ue);
    return sinr_later > z * z * sinr_now;
}

}  // namespace hetnet
