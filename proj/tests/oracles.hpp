#pragma once

// Reference implementations used only by the tests. Each one recomputes a
// quantity from first principles without going through the library code
// path it checks.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hetnet/net_model.hpp"

namespace oracle {

using hetnet::Link;
using hetnet::Scenario;

// Effective interference of one link straight from the physical gains:
// (noise + sum of co-channel powers received at this link's PoA) / own gain.
inline double effective_interference(const Scenario& s, std::size_t i, Link link, const Eigen::VectorXd& p1,
                                     const Eigen::VectorXd& p2) {
    const auto& u = s.ues[i];
    if (!u.poa(link)) return 0.0;
    const int poa = *u.poa(link);
    const int ch = *u.channel(link);
    double received = s.noise_psd * s.channel(ch).bandwidth;
    for (std::size_t j = 0; j < s.ues.size(); ++j) {
        if (j == i) continue;
        const auto& v = s.ues[j];
        if (v.chan_1 == ch) received += s.gain(v.id, poa, ch) * p1(j);
        if (v.chan_2 && *v.chan_2 == ch) received += s.gain(v.id, poa, ch) * p2(j);
    }
    return received / s.gain(u.id, poa, ch);
}

inline double link_rate(const Scenario& s, std::size_t i, Link link, const Eigen::VectorXd& p1,
                        const Eigen::VectorXd& p2) {
    const auto& u = s.ues[i];
    if (!u.poa(link)) return 0.0;
    const double p = link == Link::First ? p1(i) : p2(i);
    const double e = effective_interference(s, i, link, p1, p2);
    return s.channel(*u.channel(link)).bandwidth * std::log2(1.0 + p / e);
}

// Two-link Shannon sum rate of a single UE.
inline double sum_rate(double p1, double p2, double e1, double e2, double w1, double w2) {
    return w1 * std::log2(1.0 + p1 / e1) + w2 * std::log2(1.0 + p2 / e2);
}

inline double grid_waterfill_best(double p_max, double e1, double e2, double w1, double w2, int points = 2001) {
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < points; ++k) {
        const double p1 = p_max * k / (points - 1);
        best = std::max(best, sum_rate(p1, p_max - p1, e1, e2, w1, w2));
    }
    return best;
}

inline double greedy_objective(double p1, double p2, double e1, double e2, double w1, double w2, double v1,
                               double v2) {
    return std::min(v1, w1 * std::log2(1.0 + p1 / e1)) + std::min(v2, w2 * std::log2(1.0 + p2 / e2));
}

// Best greedy objective over the feasible triangle p1, p2 >= 0, p1 + p2 <= p_max.
inline double grid_greedy_best(double p_max, double e1, double e2, double w1, double w2, double v1, double v2,
                               int points = 401) {
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < points; ++a) {
        const double p1 = p_max * a / (points - 1);
        for (int b = 0; a + b < points; ++b) {
            const double p2 = p_max * b / (points - 1);
            best = std::max(best, greedy_objective(p1, p2, e1, e2, w1, w2, v1, v2));
        }
    }
    return best;
}

// Dinic max-flow on a dense capacity matrix.
class MaxFlow {
public:
    explicit MaxFlow(int n) : n_(n), cap_(n, std::vector<double>(n, 0.0)) {}

    void add_edge(int from, int to, double capacity) { cap_[from][to] += capacity; }

    double solve(int source, int sink) {
        double flow = 0.0;
        while (bfs(source, sink)) {
            next_.assign(n_, 0);
            while (double pushed = dfs(source, sink, std::numeric_limits<double>::infinity())) flow += pushed;
        }
        return flow;
    }

private:
    bool bfs(int source, int sink) {
        level_.assign(n_, -1);
        level_[source] = 0;
        std::queue<int> q;
        q.push(source);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v = 0; v < n_; ++v) {
                if (level_[v] < 0 && cap_[u][v] > 1e-15) {
                    level_[v] = level_[u] + 1;
                    q.push(v);
                }
            }
        }
        return level_[sink] >= 0;
    }

    double dfs(int u, int sink, double limit) {
        if (u == sink) return limit;
        for (int& v = next_[u]; v < n_; ++v) {
            if (cap_[u][v] > 1e-15 && level_[v] == level_[u] + 1) {
                const double pushed = dfs(v, sink, std::min(limit, cap_[u][v]));
                if (pushed > 0.0) {
                    cap_[u][v] -= pushed;
                    cap_[v][u] += pushed;
                    return pushed;
                }
            }
        }
        return 0.0;
    }

    int n_;
    std::vector<std::vector<double>> cap_;
    std::vector<int> level_;
    std::vector<int> next_;
};

// End-to-end capacity as a flow problem: each UE link is a source edge
// carrying its access rate into its PoA; relays feed the macrocell; the
// macrocell and picocells feed the backbone through their backhaul.
inline double network_max_flow(const Scenario& s, const Eigen::VectorXd& rate1, const Eigen::VectorXd& rate2) {
    const int ues = static_cast<int>(s.ues.size());
    const int poas = static_cast<int>(s.poas.size());
    const int source = 0;
    const int sink = 1 + 2 * ues + poas;
    auto ue_node = [](int i, int link) { return 1 + 2 * i + link; };
    auto poa_node = [&](int id) { return 1 + 2 * ues + (id - 1); };
    MaxFlow g(sink + 1);
    for (int i = 0; i < ues; ++i) {
        const auto& u = s.ues[i];
        g.add_edge(source, ue_node(i, 0), rate1(i));
        g.add_edge(ue_node(i, 0), poa_node(u.poa_1), std::numeric_limits<double>::infinity());
        if (u.poa_2) {
            g.add_edge(source, ue_node(i, 1), rate2(i));
            g.add_edge(ue_node(i, 1), poa_node(*u.poa_2), std::numeric_limits<double>::infinity());
        }
    }
    const int macro = s.macrocell_id();
    for (const auto& p : s.poas) {
        switch (p.kind) {
            case hetnet::PoaKind::Relay: g.add_edge(poa_node(p.id), poa_node(macro), p.backhaul_capacity); break;
            case hetnet::PoaKind::Picocell: g.add_edge(poa_node(p.id), sink, p.backhaul_capacity); break;
            case hetnet::PoaKind::Macrocell: g.add_edge(poa_node(p.id), sink, p.backhaul_capacity); break;
        }
    }
    return g.solve(source, sink);
}

// Gelfand's formula: rho(M) = lim ||M^k||^(1/k), evaluated with repeated
// squaring and renormalization.
inline double spectral_radius(const Eigen::MatrixXd& m, int squarings = 40) {
    Eigen::MatrixXd a = m;
    double log_scale = 0.0;  // log of the factor divided out of a
    double k = 1.0;
    for (int s = 0; s < squarings; ++s) {
        const double norm = a.norm();
        if (norm == 0.0) return 0.0;
        a /= norm;
        log_scale += std::log(norm) / k;
        a = a * a;
        k *= 2.0;
    }
    const double norm = a.norm();
    if (norm == 0.0) return 0.0;
    return std::exp(log_scale + std::log(norm) / k);
}

}  // namespace oracle
