#include "hetnet/scenario_gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>

namespace hetnet {

namespace {

struct Rect {
    double x0, y0, x1, y1;
    Point centre() const { return {(x0 + x1) / 2.0, (y0 + y1) / 2.0}; }
};

// Equal rectangles tiling the area, with the most square-like cells.
std::vector<Rect> partition(int cells, double width, double height) {
    int best_cols = 1;
    double best_score = std::numeric_limits<double>::infinity();
    for (int cols = 1; cols <= cells; ++cols) {
        if (cells % cols != 0) continue;
        const int rows = cells / cols;
        const double score = std::abs(std::log((width / cols) / (height / rows)));
        if (score < best_score) {
            best_score = score;
            best_cols = cols;
        }
    }
    const int cols = best_cols;
    const int rows = cells / cols;
    const double cw = width / cols;
    const double ch = height / rows;
    std::vector<Rect> out;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            out.push_back(Rect{-width / 2 + c * cw, -height / 2 + r * ch, -width / 2 + (c + 1) * cw,
                               -height / 2 + (r + 1) * ch});
    return out;
}

void check_params(const GeneratorParams& p) {
    if (p.n_ues < 0 || p.n_relays < 0 || p.n_picos < 0 || p.n_fixed_sinr_ues < 0)
        throw std::invalid_argument("generate: counts must be >= 0");
    if (!(p.radius > 0.0)) throw std::invalid_argument("generate: radius must be > 0");
    if (!(p.alpha >= 2.0 && p.alpha <= 6.0)) throw std::invalid_argument("generate: alpha must lie in [2, 6]");
    if (!(p.backhaul_scale > 0.0)) throw std::invalid_argument("generate: backhaul scale must be > 0");
    if (p.bandwidth_choices.empty()) throw std::invalid_argument("generate: no bandwidth choices");
    for (double w : p.bandwidth_choices)
        if (!(w > 0.0)) throw std::invalid_argument("generate: bandwidths must be > 0");
    if (p.n_ues + p.n_fixed_sinr_ues > 0 && p.n_relays + p.n_picos == 0)
        throw std::invalid_argument("generate: UEs need at least one small cell");
    if (!(p.area_width > 0.0 && p.area_height > 0.0)) throw std::invalid_argument("generate: empty area");
    if (!(p.sinr_target_range.first > 0.0 && p.sinr_target_range.second >= p.sinr_target_range.first))
        throw std::invalid_argument("generate: bad SINR target range");
}

}  // namespace

double path_gain(double reference, double distance_m, double alpha, double fading) {
    return reference * fading * std::pow(std::max(distance_m, 1.0), -alpha);
}

Scenario generate(const GeneratorParams& params) {
    check_params(params);
    std::mt19937_64 rng(params.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Scenario s;
    s.noise_psd = params.noise_psd;
    s.tau = params.tau;
    s.z_factor = params.z;

    // PoAs
    const int small_cells = params.n_relays + params.n_picos;
    const int macro_id = small_cells + 1;
    std::vector<Rect> cells = partition(small_cells + 1, params.area_width, params.area_height);
    auto macro_cell = std::min_element(cells.begin(), cells.end(), [](const Rect& a, const Rect& b) {
        return std::hypot(a.centre().x, a.centre().y) < std::hypot(b.centre().x, b.centre().y);
    });
    cells.erase(macro_cell);
    std::shuffle(cells.begin(), cells.end(), rng);

    for (int k = 0; k < small_cells; ++k) {
        const Rect& r = cells[k];
        Point pos;
        bool placed = false;
        for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
            pos = Point{r.x0 + unit(rng) * (r.x1 - r.x0), r.y0 + unit(rng) * (r.y1 - r.y0)};
            placed = std::all_of(s.poas.begin(), s.poas.end(), [&](const Poa& other) {
                return distance(other.position, pos) >= params.min_separation;
            });
        }
        if (!placed) throw std::runtime_error("generate: cannot satisfy the small-cell separation");
        const bool relay = k < params.n_relays;
        s.poas.push_back(Poa{k + 1, relay ? PoaKind::Relay : PoaKind::Picocell, pos,
                             params.backhaul_scale * (relay ? params.relay_backhaul : params.pico_backhaul)});
    }
    s.poas.push_back(Poa{macro_id, PoaKind::Macrocell, Point{0.0, 0.0}, params.backhaul_scale * params.macro_backhaul});

    // UEs
    const int total_ues = params.n_ues + params.n_fixed_sinr_ues;
    for (int i = 0; i < total_ues; ++i) {
        const Poa& anchor = s.poas[i % small_cells];
        const double r = params.radius * std::sqrt(unit(rng));
        const double theta = 2.0 * std::numbers::pi * unit(rng);
        Ue u;
        u.id = i + 1;
        u.position = Point{anchor.position.x + r * std::cos(theta), anchor.position.y + r * std::sin(theta)};
        u.p_max = params.p_max;
        const auto nearest = std::min_element(s.poas.begin(), s.poas.begin() + small_cells, [&](const Poa& a, const Poa& b) {
            return distance(a.position, u.position) < distance(b.position, u.position);
        });
        u.poa_1 = nearest->id;
        if (i < params.n_ues) u.poa_2 = macro_id;
        s.ues.push_back(u);
    }

    // Channels: slot k at every small cell uses the k-th first-tier channel;
    // macrocell links take the lowest free channel differing from link 1.
    const bool separate = params.separate_tier_channels || params.n_fixed_sinr_ues > 0;
    std::map<int, int> next_slot;
    int first_tier = 0;
    for (auto& u : s.ues) {
        u.chan_1 = ++next_slot[u.poa_1];
        first_tier = std::max(first_tier, u.chan_1);
    }
    const int second_base = separate ? first_tier : 0;
    std::set<int> used_at_macro;
    int channel_count = first_tier;
    for (auto& u : s.ues) {
        if (!u.poa_2) continue;
        int c = second_base + 1;
        while (used_at_macro.contains(c) || c == u.chan_1) ++c;
        used_at_macro.insert(c);
        u.chan_2 = c;
        channel_count = std::max(channel_count, c);
    }
    if (params.max_channels > 0 && channel_count > params.max_channels)
        throw std::runtime_error("generate: channel assignment needs " + std::to_string(channel_count) +
                                 " channels, limit is " + std::to_string(params.max_channels));
    std::uniform_int_distribution<std::size_t> pick(0, params.bandwidth_choices.size() - 1);
    for (int c = 1; c <= channel_count; ++c) s.channels.push_back(Channel{c, params.bandwidth_choices[pick(rng)]});

    std::uniform_real_distribution<double> target(params.sinr_target_range.first, params.sinr_target_range.second);
    for (auto& u : s.ues)
        if (!u.poa_2) u.fixed_sinr_target = target(rng);

    // Gains for every (transmitter, receiver, channel) that can couple.
    std::map<int, std::vector<int>> transmitters;  // channel -> UE ids
    std::set<std::pair<int, int>> receivers;       // (PoA, channel)
    for (const auto& u : s.ues) {
        for (Link link : {Link::First, Link::Second}) {
            if (!u.poa(link)) continue;
            transmitters[*u.channel(link)].push_back(u.id);
            receivers.emplace(*u.poa(link), *u.channel(link));
        }
    }
    std::exponential_distribution<double> fading(1.0);
    for (const auto& [poa_id, ch] : receivers) {
        const Poa& rx = s.poa(poa_id);
        std::set<int> senders(transmitters[ch].begin(), transmitters[ch].end());
        for (int ue_id : senders) {
            const double d = distance(s.ue(ue_id).position, rx.position);
            s.gains[GainKey{ue_id, poa_id, ch}] = path_gain(params.gain_reference, d, params.alpha, fading(rng));
        }
    }
    return s;
}

WorkedExampleBackhaul worked_example_backhaul(WorkedExampleCase which) {
    if (which == WorkedExampleCase::HighBackhaul) return {1e12, 1e12, 1e12};
    return {10e6, 8e6, 50e6};
}

Scenario worked_example(WorkedExampleCase which) {
    // Normalized quantities of the example. They cannot all come from a single
    // geometry with unit/half fading (the macrocell sees both UEs at equal
    // distance), so physical gains are derived from them instead of from
    // path loss.
    constexpr double d1_a = 0.0164, d1_b = 0.059;
    constexpr double d2_a = 0.0295, d2_b = 0.0082;
    constexpr double f12_ab = 1.0, f12_ba = 0.0509;
    constexpr double f21_ab = 0.5, f21_ba = 0.0509;

    Scenario s;
    s.noise_psd = 1e-19;
    s.tau = 5e6;
    s.z_factor = 0.9;
    const auto backhaul = worked_example_backhaul(which);
    s.poas = {Poa{1, PoaKind::Relay, Point{-2000.0, 0.0}, backhaul.relay},
              Poa{2, PoaKind::Picocell, Point{2000.0, 0.0}, backhaul.pico},
              Poa{3, PoaKind::Macrocell, Point{0.0, 0.0}, backhaul.macro}};
    // Each UE's relay/picocell link shares a channel with the other UE's
    // macrocell link; that is the only way both cross-tier matrices couple.
    s.channels = {Channel{1, 10e6}, Channel{2, 5e6}};

    Ue a;
    a.id = 1;
    a.position = Point{-2000.0, -2000.0};
    a.poa_1 = 1;
    a.chan_1 = 1;
    a.poa_2 = 3;
    a.chan_2 = 2;
    Ue b;
    b.id = 2;
    b.position = Point{2000.0, -2000.0};
    b.poa_1 = 2;
    b.chan_1 = 2;
    b.poa_2 = 3;
    b.chan_2 = 1;
    s.ues = {a, b};

    const double n10 = s.noise_psd * 10e6;
    const double n5 = s.noise_psd * 5e6;
    const double g_a_relay = n10 / d1_a;
    const double g_a_macro = n5 / d2_a;
    const double g_b_pico = n5 / d1_b;
    const double g_b_macro = n10 / d2_b;
    s.gains = {
        {GainKey{1, 1, 1}, g_a_relay},
        {GainKey{1, 3, 2}, g_a_macro},
        {GainKey{2, 2, 2}, g_b_pico},
        {GainKey{2, 3, 1}, g_b_macro},
        {GainKey{2, 3, 2}, f12_ab * g_a_macro},  // B link 1 heard at A's macrocell receiver
        {GainKey{1, 3, 1}, f12_ba * g_b_macro},  // A link 1 heard at B's macrocell receiver
        {GainKey{2, 1, 1}, f21_ab * g_a_relay},  // B link 2 heard at the relay
        {GainKey{1, 2, 2}, f21_ba * g_b_pico},   // A link 2 heard at the picocell
    };
    return s;
}

}  // namespace hetnet
