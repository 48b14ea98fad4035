#include <catch_amalgamated.hpp>

#include "hetnet/scenario_gen.hpp"
#include "hetnet/scenario_json.hpp"

using namespace hetnet;

TEST_CASE("generator is deterministic in the seed", "[scenario_gen]") {
    GeneratorParams p;
    p.seed = 99;
    CHECK(to_json(generate(p)) == to_json(generate(p)));
    GeneratorParams q = p;
    q.seed = 100;
    CHECK(to_json(generate(p)) != to_json(generate(q)));
}

TEST_CASE("fading mean and path-loss exponent", "[scenario_gen]") {
    std::vector<double> kappa, log_d, log_g;
    GeneratorParams p;
    p.n_ues = 56;
    for (std::uint64_t seed = 1; kappa.size() < 100000; ++seed) {
        p.seed = seed;
        const Scenario s = generate(p);
        for (const auto& [key, g] : s.gains) {
            const double d = distance(s.ue(key.ue).position, s.poa(key.poa).position);
            if (d < 1.0) continue;
            kappa.push_back(g / path_gain(p.gain_reference, d, p.alpha, 1.0));
            log_d.push_back(std::log(d));
            log_g.push_back(std::log(g));
        }
    }
    double mean = 0.0;
    for (double k : kappa) mean += k;
    mean /= static_cast<double>(kappa.size());
    CHECK(mean >= 0.99);
    CHECK(mean <= 1.01);

    // Least-squares slope of log gain against log distance.
    const double n = static_cast<double>(log_d.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < log_d.size(); ++i) {
        sx += log_d[i];
        sy += log_g[i];
        sxx += log_d[i] * log_d[i];
        sxy += log_d[i] * log_g[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(-slope == Catch::Approx(p.alpha).epsilon(0.05));
}

TEST_CASE("topology follows the parameters", "[scenario_gen]") {
    GeneratorParams p;
    p.seed = 4;
    p.n_ues = 10;
    p.n_fixed_sinr_ues = 2;
    const Scenario s = generate(p);
    CHECK(s.relay_count() == 3);
    CHECK(s.picocell_count() == 4);
    CHECK(s.macrocell_id() == 8);
    CHECK(s.poa(8).position == Point{0.0, 0.0});
    CHECK(s.size() == 12);
    for (const auto& u : s.ues) {
        const Poa& small = s.poa(u.poa_1);
        CHECK(small.kind != PoaKind::Macrocell);
        for (const auto& other : s.poas) {
            if (other.kind == PoaKind::Macrocell) continue;
            CHECK(distance(u.position, small.position) <= distance(u.position, other.position) + 1e-9);
        }
        if (u.id <= 10) {
            CHECK(u.poa_2 == 8);
        } else {
            CHECK_FALSE(u.dual());
            REQUIRE(u.fixed_sinr_target);
            CHECK(*u.fixed_sinr_target >= 1.0);
            CHECK(*u.fixed_sinr_target <= 4.0);
        }
    }
    for (const auto& c : s.channels) CHECK((c.bandwidth == 1e6 || c.bandwidth == 5e6));
    CHECK(s.poa(1).backhaul_capacity == 100e6);
    CHECK(s.poa(4).backhaul_capacity == 200e6);
    CHECK(s.poa(8).backhaul_capacity == 1e9);
}

TEST_CASE("UEs stay within the drop radius of their anchor cell", "[scenario_gen]") {
    GeneratorParams p;
    p.seed = 8;
    p.n_ues = 28;
    const Scenario s = generate(p);
    for (std::size_t i = 0; i < s.ues.size(); ++i) {
        const Poa& anchor = s.poas[i % 7];
        CHECK(distance(s.ues[i].position, anchor.position) <= p.radius + 1e-9);
    }
}

TEST_CASE("backhaul scale and separation", "[scenario_gen]") {
    GeneratorParams p;
    p.backhaul_scale = 0.25;
    p.min_separation = 400.0;
    p.seed = 12;
    const Scenario s = generate(p);
    CHECK(s.poa(1).backhaul_capacity == Catch::Approx(25e6));
    for (std::size_t a = 0; a < s.poas.size(); ++a)
        for (std::size_t b = a + 1; b < s.poas.size(); ++b)
            if (s.poas[a].kind != PoaKind::Macrocell && s.poas[b].kind != PoaKind::Macrocell)
                CHECK(distance(s.poas[a].position, s.poas[b].position) >= 400.0);
}

TEST_CASE("separate tiers keep link channels disjoint", "[scenario_gen]") {
    GeneratorParams p;
    p.separate_tier_channels = true;
    const Scenario s = generate(p);
    int max_first = 0, min_second = 1 << 30;
    for (const auto& u : s.ues) {
        max_first = std::max(max_first, u.chan_1);
        min_second = std::min(min_second, *u.chan_2);
    }
    CHECK(max_first < min_second);
}

TEST_CASE("bad parameters throw", "[scenario_gen]") {
    GeneratorParams p;
    p.n_relays = 0;
    p.n_picos = 0;
    CHECK_THROWS_AS(generate(p), std::invalid_argument);
    p = GeneratorParams{};
    p.alpha = 1.0;
    CHECK_THROWS_AS(generate(p), std::invalid_argument);
    p = GeneratorParams{};
    p.max_channels = 2;
    CHECK_THROWS_AS(generate(p), std::runtime_error);
    p = GeneratorParams{};
    p.min_separation = 1e5;
    CHECK_THROWS_AS(generate(p), std::runtime_error);
}

TEST_CASE("path gain clamps distance at one metre", "[scenario_gen]") {
    CHECK(path_gain(100.0, 0.2, 3.7, 1.0) == 100.0);
    CHECK(path_gain(100.0, 10.0, 2.0, 0.5) == Catch::Approx(0.5));
}

TEST_CASE("worked example backhaul regimes", "[scenario_gen]") {
    const auto high = worked_example(WorkedExampleCase::HighBackhaul);
    const auto limited = worked_example(WorkedExampleCase::LimitedBackhaul);
    CHECK(high.poa(1).backhaul_capacity >= 1e12);
    CHECK(limited.poa(1).backhaul_capacity == 10e6);
    CHECK(limited.poa(2).backhaul_capacity == 8e6);
    CHECK(limited.poa(3).backhaul_capacity == 50e6);
    CHECK(high.gains == limited.gains);
}
