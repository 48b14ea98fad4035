#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "hetnet/net_model.hpp"

namespace hetnet {

// Schema (all quantities SI):
//   { "noise_psd": W/Hz, "tau": bit/s, "z_factor": number,
//     "poas":     [{"id", "kind": relay|picocell|macrocell, "position": [x, y], "backhaul_capacity"}],
//     "channels": [{"id", "bandwidth"}],
//     "ues":      [{"id", "position": [x, y], "p_max", "poa_1", "chan_1",
//                   "poa_2"?, "chan_2"?, "fixed_sinr_target"?}],
//     "gains":    [{"ue", "poa", "channel", "gain"}] }
nlohmann::json to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& doc);

Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

}  // namespace hetnet
