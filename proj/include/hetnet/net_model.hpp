#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace hetnet {

/// Raised when a numerical routine cannot produce a trustworthy answer
/// (singular solve, non-converging eigen solver, ...).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class PoaKind { Relay, Picocell, Macrocell };

enum class Link { First = 1, Second = 2 };

struct Point {
    double x = 0.0;  // meters
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b);

/// Point of access. Ids are 1-based: relays first, then picocells, then the
/// single macrocell with the largest id.
struct Poa {
    int id = 0;
    PoaKind kind = PoaKind::Picocell;
    Point position;
    double backhaul_capacity = 0.0;  // bits/s
};

struct Channel {
    int id = 0;
    double bandwidth = 0.0;  // Hz
};

/// A UE holds one or two uplink access links. Single-link UEs carry a fixed
/// SINR target and have no second link.
struct Ue {
    int id = 0;
    Point position;
    double p_max = 1.0;  // watts
    int poa_1 = 0;
    int chan_1 = 0;
    std::optional<int> poa_2;
    std::optional<int> chan_2;
    std::optional<double> fixed_sinr_target;

    bool dual() const { return poa_2.has_value() && chan_2.has_value(); }
    std::optional<int> poa(Link link) const;
    std::optional<int> channel(Link link) const;
};

/// Physical power gain from a transmitting UE to a receiving PoA on a channel.
struct GainKey {
    int ue = 0;
    int poa = 0;
    int channel = 0;

    friend auto operator<=>(const GainKey&, const GainKey&) = default;
};

/// Immutable network description. Path loss and fading are pre-composed into
/// `gains`; nothing downstream re-derives geometry.
struct Scenario {
    std::vector<Poa> poas;
    std::vector<Ue> ues;
    std::vector<Channel> channels;
    std::map<GainKey, double> gains;
    double noise_psd = 1e-19;  // W/Hz
    double tau = 5e6;          // bits/s
    double z_factor = 0.9;

    std::size_t size() const { return ues.size(); }

    const Poa& poa(int id) const;
    const Ue& ue(int id) const;
    const Channel& channel(int id) const;
    double gain(int ue, int poa, int channel) const;
    int macrocell_id() const;
    int relay_count() const;
    int picocell_count() const;

    /// Bandwidth of the channel carrying `link` of `ue`; 0 for an absent link.
    double link_bandwidth(int ue, Link link) const;
};

/// Returns one human-readable entry per violated invariant; empty when the
/// scenario is well formed.
std::vector<std::string> validate_scenario(const Scenario& s);

/// Noise power n_o * W on the channel of the given link.
double noise_power(const Scenario& s, int ue, Link link);

std::string to_string(PoaKind kind);
PoaKind poa_kind_from_string(const std::string& name);

}  // namespace hetnet
