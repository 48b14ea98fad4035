#include "hetnet/scenario_json.hpp"

#include <fstream>

namespace hetnet {

using nlohmann::json;

namespace {

json point_to_json(const Point& p) { return json::array({p.x, p.y}); }

Point point_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("position must be [x, y]");
    return Point{j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json to_json(const Scenario& s) {
    json doc;
    doc["noise_psd"] = s.noise_psd;
    doc["tau"] = s.tau;
    doc["z_factor"] = s.z_factor;

    json poas = json::array();
    for (const auto& p : s.poas) {
        poas.push_back({{"id", p.id},
                        {"kind", to_string(p.kind)},
                        {"position", point_to_json(p.position)},
                        {"backhaul_capacity", p.backhaul_capacity}});
    }
    doc["poas"] = std::move(poas);

    json channels = json::array();
    for (const auto& c : s.channels) channels.push_back({{"id", c.id}, {"bandwidth", c.bandwidth}});
    doc["channels"] = std::move(channels);

    json ues = json::array();
    for (const auto& u : s.ues) {
        json ju = {{"id", u.id},
                   {"position", point_to_json(u.position)},
                   {"p_max", u.p_max},
                   {"poa_1", u.poa_1},
                   {"chan_1", u.chan_1}};
        if (u.poa_2) ju["poa_2"] = *u.poa_2;
        if (u.chan_2) ju["chan_2"] = *u.chan_2;
        if (u.fixed_sinr_target) ju["fixed_sinr_target"] = *u.fixed_sinr_target;
        ues.push_back(std::move(ju));
    }
    doc["ues"] = std::move(ues);

    json gains = json::array();
    for (const auto& [key, g] : s.gains)
        gains.push_back({{"ue", key.ue}, {"poa", key.poa}, {"channel", key.channel}, {"gain", g}});
    doc["gains"] = std::move(gains);
    return doc;
}

Scenario scenario_from_json(const json& doc) {
    Scenario s;
    try {
        s.noise_psd = doc.at("noise_psd").get<double>();
        s.tau = doc.at("tau").get<double>();
        s.z_factor = doc.at("z_factor").get<double>();
        for (const auto& jp : doc.at("poas")) {
            s.poas.push_back(Poa{jp.at("id").get<int>(),
                                 poa_kind_from_string(jp.at("kind").get<std::string>()),
                                 point_from_json(jp.at("position")),
                                 jp.at("backhaul_capacity").get<double>()});
        }
        for (const auto& jc : doc.at("channels"))
            s.channels.push_back(Channel{jc.at("id").get<int>(), jc.at("bandwidth").get<double>()});
        for (const auto& ju : doc.at("ues")) {
            Ue u;
            u.id = ju.at("id").get<int>();
            u.position = point_from_json(ju.at("position"));
            u.p_max = ju.at("p_max").get<double>();
            u.poa_1 = ju.at("poa_1").get<int>();
            u.chan_1 = ju.at("chan_1").get<int>();
            if (ju.contains("poa_2")) u.poa_2 = ju["poa_2"].get<int>();
            if (ju.contains("chan_2")) u.chan_2 = ju["chan_2"].get<int>();
            if (ju.contains("fixed_sinr_target")) u.fixed_sinr_target = ju["fixed_sinr_target"].get<double>();
            s.ues.push_back(u);
        }
        for (const auto& jg : doc.at("gains")) {
            GainKey key{jg.at("ue").get<int>(), jg.at("poa").get<int>(), jg.at("channel").get<int>()};
            if (!s.gains.emplace(key, jg.at("gain").get<double>()).second)
                throw std::invalid_argument("duplicate gain entry");
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed scenario document: ") + e.what());
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open scenario file " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("cannot parse " + path.string() + ": " + e.what());
    }
    return scenario_from_json(doc);
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << to_json(s).dump(2) << '\n';
}

}  // namespace hetnet
