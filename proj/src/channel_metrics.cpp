#include "hetnet/channel_metrics.hpp"

#include <cmath>

namespace hetnet {

namespace {

void check_dims(const CrossGainMatrices& m, const VectorXd& a, const VectorXd& b, const char* what) {
    if (a.size() != m.size() || b.size() != m.size())
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

CrossGainMatrices build_matrices(const Scenario& s) {
    const auto n = static_cast<Eigen::Index>(s.size());
    CrossGainMatrices m;
    m.f11 = m.f12 = m.f21 = m.f22 = MatrixXd::Zero(n, n);
    m.d1 = m.d2 = m.w1 = m.w2 = m.lambda = VectorXd::Zero(n);

    auto slot = [&m](Link src, Link dst) -> MatrixXd& {
        if (src == Link::First) return dst == Link::First ? m.f11 : m.f12;
        return dst == Link::First ? m.f21 : m.f22;
    };

    for (Eigen::Index i = 0; i < n; ++i) {
        const Ue& victim = s.ues[i];
        for (Link dst : {Link::First, Link::Second}) {
            auto poa = victim.poa(dst);
            auto ch = victim.channel(dst);
            if (!poa || !ch) continue;
            const double own = s.gain(victim.id, *poa, *ch);
            const double bw = s.channel(*ch).bandwidth;
            (dst == Link::First ? m.d1 : m.d2)(i) = s.noise_psd * bw / own;
            (dst == Link::First ? m.w1 : m.w2)(i) = bw;

            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                const Ue& src_ue = s.ues[j];
                for (Link src : {Link::First, Link::Second}) {
                    auto src_ch = src_ue.channel(src);
                    if (!src_ch || *src_ch != *ch) continue;
                    slot(src, dst)(i, j) = s.gain(src_ue.id, *poa, *ch) / own;
                }
            }
        }
        const double total = m.w1(i) + m.w2(i);
        m.lambda(i) = total > 0.0 ? 1.0 / total : 0.0;
    }
    return m;
}

Interference effective_interference(const CrossGainMatrices& m, const VectorXd& p1, const VectorXd& p2) {
    check_dims(m, p1, p2, "effective_interference");
    return Interference{m.d1 + m.f11 * p1 + m.f21 * p2, m.d2 + m.f22 * p2 + m.f12 * p1};
}

LinkRates link_rates(const CrossGainMatrices& m, const VectorXd& p1, const VectorXd& p2,
                     const VectorXd& e1, const VectorXd& e2) {
    check_dims(m, p1, p2, "link_rates");
    check_dims(m, e1, e2, "link_rates");
    LinkRates out{VectorXd::Zero(m.size()), VectorXd::Zero(m.size())};
    auto fill = [](const VectorXd& w, const VectorXd& p, const VectorXd& e, VectorXd& rate) {
        for (Eigen::Index i = 0; i < w.size(); ++i) {
            if (w(i) == 0.0) continue;
            if (!(e(i) > 0.0)) throw std::invalid_argument("link_rates: effective interference must be > 0");
            rate(i) = p(i) > 0.0 ? w(i) * std::log2(1.0 + p(i) / e(i)) : 0.0;
        }
    };
    fill(m.w1, p1, e1, out.rate1);
    fill(m.w2, p2, e2, out.rate2);
    return out;
}

PowerState evaluate_powers(const CrossGainMatrices& m, const VectorXd& p1, const VectorXd& p2) {
    PowerState st;
    st.p1 = p1;
    st.p2 = p2;
    auto [e1, e2] = effective_interference(m, p1, p2);
    st.e1 = std::move(e1);
    st.e2 = std::move(e2);
    st.sinr1 = st.sinr2 = VectorXd::Zero(m.size());
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        if (st.e1(i) > 0.0) st.sinr1(i) = p1(i) / st.e1(i);
        if (st.e2(i) > 0.0) st.sinr2(i) = p2(i) / st.e2(i);
    }
    auto rates = link_rates(m, p1, p2, st.e1, st.e2);
    st.rate1 = std::move(rates.rate1);
    st.rate2 = std::move(rates.rate2);
    return st;
}

VectorXd p_max_vector(const Scenario& s) {
    VectorXd p(static_cast<Eigen::Index>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) p(static_cast<Eigen::Index>(i)) = s.ues[i].p_max;
    return p;
}

}  // namespace hetnet
