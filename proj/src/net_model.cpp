#include "hetnet/net_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace hetnet {

double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

std::optional<int> Ue::poa(Link link) const {
    if (link == Link::First) return poa_1;
    return poa_2;
}

std::optional<int> Ue::channel(Link link) const {
    if (link == Link::First) return chan_1;
    return chan_2;
}

const Poa& Scenario::poa(int id) const {
    auto it = std::find_if(poas.begin(), poas.end(), [id](const Poa& p) { return p.id == id; });
    if (it == poas.end()) throw std::out_of_range("unknown PoA id " + std::to_string(id));
    return *it;
}

const Ue& Scenario::ue(int id) const {
    if (id < 1 || static_cast<std::size_t>(id) > ues.size() || ues[id - 1].id != id)
        throw std::out_of_range("unknown UE id " + std::to_string(id));
    return ues[id - 1];
}

const Channel& Scenario::channel(int id) const {
    auto it = std::find_if(channels.begin(), channels.end(),
                           [id](const Channel& c) { return c.id == id; });
    if (it == channels.end()) throw std::out_of_range("unknown channel id " + std::to_string(id));
    return *it;
}

double Scenario::gain(int ue_id, int poa_id, int channel_id) const {
    auto it = gains.find(GainKey{ue_id, poa_id, channel_id});
    if (it == gains.end()) {
        std::ostringstream os;
        os << "missing gain for UE " << ue_id << " -> PoA " << poa_id << " on channel "
           << channel_id;
        throw std::out_of_range(os.str());
    }
    return it->second;
}

int Scenario::macrocell_id() const {
    for (const auto& p : poas)
        if (p.kind == PoaKind::Macrocell) return p.id;
    throw std::out_of_range("scenario has no macrocell");
}

int Scenario::relay_count() const {
    return static_cast<int>(
        std::count_if(poas.begin(), poas.end(), [](const Poa& p) { return p.kind == PoaKind::Relay; }));
}

int Scenario::picocell_count() const {
    return static_cast<int>(std::count_if(poas.begin(), poas.end(), [](const Poa& p) {
        return p.kind == PoaKind::Picocell;
    }));
}

double Scenario::link_bandwidth(int ue_id, Link link) const {
    auto ch = ue(ue_id).channel(link);
    if (!ch) return 0.0;
    return channel(*ch).bandwidth;
}

std::vector<std::string> validate_scenario(const Scenario& s) {
    std::vector<std::string> out;
    auto report = [&out](const std::string& what) { out.push_back(what); };

    const int relays = s.relay_count();
    const int picos = s.picocell_count();
    int macros = 0;
    std::set<int> poa_ids;
    for (const auto& p : s.poas) {
        const std::string who = "PoA " + std::to_string(p.id);
        if (!poa_ids.insert(p.id).second) report(who + ": duplicate id");
        switch (p.kind) {
            case PoaKind::Relay:
                if (p.id < 1 || p.id > relays) report(who + ": relay id must lie in 1.." + std::to_string(relays));
                break;
            case PoaKind::Picocell:
                if (p.id <= relays || p.id > relays + picos)
                    report(who + ": picocell id must lie in " + std::to_string(relays + 1) + ".." +
                           std::to_string(relays + picos));
                break;
            case PoaKind::Macrocell:
                ++macros;
                if (p.id != relays + picos + 1)
                    report(who + ": macrocell id must be " + std::to_string(relays + picos + 1));
                break;
        }
        if (!(p.backhaul_capacity >= 0.0)) report(who + ": backhaul capacity must be >= 0");
    }
    if (macros != 1) report("scenario must contain exactly one macrocell, found " + std::to_string(macros));

    std::set<int> channel_ids;
    for (const auto& c : s.channels) {
        const std::string who = "channel " + std::to_string(c.id);
        if (!channel_ids.insert(c.id).second) report(who + ": duplicate id");
        if (!(c.bandwidth > 0.0)) report(who + ": bandwidth must be > 0");
    }

    // (PoA, channel) -> first UE seen there
    std::map<std::pair<int, int>, int> occupancy;
    for (std::size_t idx = 0; idx < s.ues.size(); ++idx) {
        const Ue& u = s.ues[idx];
        const std::string who = "UE " + std::to_string(u.id);
        if (u.id != static_cast<int>(idx) + 1) report(who + ": ids must be 1..n in order");
        if (!(u.p_max > 0.0)) report(who + ": p_max must be > 0");
        if (!poa_ids.contains(u.poa_1)) report(who + ": link 1 references unknown PoA " + std::to_string(u.poa_1));
        if (!channel_ids.contains(u.chan_1))
            report(who + ": link 1 references unknown channel " + std::to_string(u.chan_1));
        if (u.poa_2.has_value() != u.chan_2.has_value())
            report(who + ": second link needs both a PoA and a channel");
        if (u.dual()) {
            if (!poa_ids.contains(*u.poa_2))
                report(who + ": link 2 references unknown PoA " + std::to_string(*u.poa_2));
            if (!channel_ids.contains(*u.chan_2))
                report(who + ": link 2 references unknown channel " + std::to_string(*u.chan_2));
            if (u.chan_1 == *u.chan_2) report(who + ": both links use channel " + std::to_string(u.chan_1));
            if (u.fixed_sinr_target) report(who + ": fixed SINR target is only valid for single-link UEs");
        } else if (!u.poa_2 && !u.chan_2) {
            if (!u.fixed_sinr_target || !(*u.fixed_sinr_target > 0.0))
                report(who + ": single-link UE needs a positive fixed SINR target");
        }

        for (Link link : {Link::First, Link::Second}) {
            auto poa = u.poa(link);
            auto ch = u.channel(link);
            if (!poa || !ch) continue;
            auto [it, inserted] = occupancy.emplace(std::make_pair(*poa, *ch), u.id);
            if (!inserted && it->second != u.id)
                report("UE " + std::to_string(it->second) + " and UE " + std::to_string(u.id) +
                       " both transmit to PoA " + std::to_string(*poa) + " on channel " +
                       std::to_string(*ch));
        }
    }

    for (const auto& [key, g] : s.gains) {
        if (!(g > 0.0)) {
            std::ostringstream os;
            os << "gain UE " << key.ue << " -> PoA " << key.poa << " on channel " << key.channel
               << " must be > 0";
            report(os.str());
        }
    }

    if (!(s.noise_psd > 0.0)) report("noise_psd must be > 0");
    if (!(s.tau > 0.0)) report("tau must be > 0");
    if (!(s.z_factor > 0.0 && s.z_factor < 1.0)) report("z_factor must lie in (0, 1)");
    return out;
}

double noise_power(const Scenario& s, int ue, Link link) {
    auto ch = s.ue(ue).channel(link);
    if (!ch) throw std::out_of_range("UE " + std::to_string(ue) + " has no link " +
                                     std::to_string(static_cast<int>(link)));
    return s.noise_psd * s.channel(*ch).bandwidth;
}

std::string to_string(PoaKind kind) {
    switch (kind) {
        case PoaKind::Relay: return "relay";
        case PoaKind::Picocell: return "picocell";
        case PoaKind::Macrocell: return "macrocell";
    }
    return "unknown";
}

PoaKind poa_kind_from_string(const std::string& name) {
    if (name == "relay") return PoaKind::Relay;
    if (name == "picocell") return PoaKind::Picocell;
    if (name == "macrocell") return PoaKind::Macrocell;
    throw std::invalid_argument("unknown PoA kind '" + name + "'");
}

}  // namespace hetnet
