#include <catch_amalgamated.hpp>

#include <filesystem>

#include "hetnet/scenario_gen.hpp"
#include "hetnet/scenario_json.hpp"

using namespace hetnet;

namespace {

bool mentions(const std::vector<std::string>& violations, const std::string& needle) {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("worked example is valid", "[net_model]") {
    for (auto c : {WorkedExampleCase::HighBackhaul, WorkedExampleCase::LimitedBackhaul})
        CHECK(validate_scenario(worked_example(c)).empty());
}

TEST_CASE("generated scenarios are valid", "[net_model]") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GeneratorParams p;
        p.seed = seed;
        p.n_fixed_sinr_ues = seed % 3;
        CHECK(validate_scenario(generate(p)).empty());
    }
}

TEST_CASE("channel clash names both UEs", "[net_model]") {
    Scenario s = worked_example(WorkedExampleCase::HighBackhaul);
    s.ues[1].chan_2 = 2;  // B's macrocell link now collides with A's on channel 2
    const auto v = validate_scenario(s);
    CHECK(mentions(v, "UE 1 and UE 2"));
}

TEST_CASE("validation catches bad scalars and references", "[net_model]") {
    Scenario s = worked_example(WorkedExampleCase::HighBackhaul);
    s.tau = 0.0;
    s.z_factor = 1.0;
    s.noise_psd = -1.0;
    s.ues[0].poa_1 = 42;
    s.channels[0].bandwidth = 0.0;
    const auto v = validate_scenario(s);
    CHECK(mentions(v, "tau"));
    CHECK(v.size() >= 5);
}

TEST_CASE("single-link UE needs a target and dual-link UE must not have one", "[net_model]") {
    Scenario s = worked_example(WorkedExampleCase::HighBackhaul);
    s.ues[0].fixed_sinr_target = 2.0;
    CHECK_FALSE(validate_scenario(s).empty());
    s = worked_example(WorkedExampleCase::HighBackhaul);
    s.ues[1].poa_2.reset();
    s.ues[1].chan_2.reset();
    CHECK_FALSE(validate_scenario(s).empty());
    s.ues[1].fixed_sinr_target = 2.0;
    CHECK(validate_scenario(s).empty());
}

TEST_CASE("exactly one macrocell", "[net_model]") {
    Scenario s = worked_example(WorkedExampleCase::HighBackhaul);
    s.poas[0].kind = PoaKind::Macrocell;
    CHECK(mentions(validate_scenario(s), "macrocell"));
}

TEST_CASE("missing gain throws", "[net_model]") {
    const Scenario s = worked_example(WorkedExampleCase::HighBackhaul);
    CHECK_THROWS_AS(s.gain(1, 2, 1), std::out_of_range);
    CHECK(s.gain(1, 1, 1) > 0.0);
}

TEST_CASE("accessors", "[net_model]") {
    const Scenario s = worked_example(WorkedExampleCase::HighBackhaul);
    CHECK(s.macrocell_id() == 3);
    CHECK(s.relay_count() == 1);
    CHECK(s.picocell_count() == 1);
    CHECK(s.link_bandwidth(1, Link::First) == 10e6);
    CHECK(s.link_bandwidth(2, Link::First) == 5e6);
    CHECK(noise_power(s, 1, Link::Second) == Catch::Approx(1e-19 * 5e6));
    CHECK(poa_kind_from_string(to_string(PoaKind::Relay)) == PoaKind::Relay);
    CHECK_THROWS(poa_kind_from_string("femto"));
}

TEST_CASE("JSON round trip preserves every field", "[net_model][json]") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        GeneratorParams p;
        p.seed = seed;
        p.n_ues = 1 + static_cast<int>(seed % 9);
        p.n_fixed_sinr_ues = static_cast<int>(seed % 4);
        const Scenario a = generate(p);
        const Scenario b = scenario_from_json(nlohmann::json::parse(to_json(a).dump()));
        CHECK(to_json(a) == to_json(b));
        REQUIRE(a.ues.size() == b.ues.size());
        for (std::size_t i = 0; i < a.ues.size(); ++i) {
            CHECK(a.ues[i].position == b.ues[i].position);
            CHECK(a.ues[i].poa_2 == b.ues[i].poa_2);
            CHECK(a.ues[i].fixed_sinr_target == b.ues[i].fixed_sinr_target);
        }
        CHECK(a.gains == b.gains);
        CHECK(a.tau == b.tau);
        CHECK(a.z_factor == b.z_factor);
    }
}

TEST_CASE("JSON file round trip", "[net_model][json]") {
    const auto path = std::filesystem::temp_directory_path() / "hetnet_roundtrip.json";
    const Scenario a = worked_example(WorkedExampleCase::LimitedBackhaul);
    save_scenario(a, path);
    const Scenario b = load_scenario(path);
    CHECK(to_json(a) == to_json(b));
    std::filesystem::remove(path);
}

TEST_CASE("malformed JSON is rejected", "[net_model][json]") {
    CHECK_THROWS_AS(scenario_from_json(nlohmann::json::parse(R"({"poas": 3})")), std::invalid_argument);
    auto doc = to_json(worked_example(WorkedExampleCase::HighBackhaul));
    doc["poas"][0]["kind"] = "femto";
    CHECK_THROWS_AS(scenario_from_json(doc), std::invalid_argument);
    doc = to_json(worked_example(WorkedExampleCase::HighBackhaul));
    doc["gains"].push_back(doc["gains"][0]);
    CHECK_THROWS_AS(scenario_from_json(doc), std::invalid_argument);
    CHECK_THROWS_AS(load_scenario("/nonexistent/file.json"), std::invalid_argument);
}
