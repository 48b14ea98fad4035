#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hetnet/net_model.hpp"

namespace hetnet {

/// Random-drop topology. Small cells are placed uniformly inside equal
/// rectangles partitioning the deployment area (the cell nearest the centre
/// hosts the macrocell at the origin); UEs are dropped uniformly in discs
/// around the small cells, round-robin. Link 1 goes to the nearest small
/// cell, link 2 to the macrocell.
struct GeneratorParams {
    int n_ues = 21;
    int n_relays = 3;
    int n_picos = 4;
    int n_fixed_sinr_ues = 0;  // single-link UEs, dropped after the dual-link ones

    double radius = 200.0;  // m, UE drop disc around each small cell
    double alpha = 3.7;
    double area_width = 3000.0;   // m
    double area_height = 3200.0;  // m
    double min_separation = 0.0;  // m, between small cells

    std::vector<double> bandwidth_choices = {1e6, 5e6};  // Hz, drawn uniformly per channel

    double relay_backhaul = 100e6;  // bit/s, before scaling
    double pico_backhaul = 200e6;
    double macro_backhaul = 1e9;
    double backhaul_scale = 1.0;  // L

    double tau = 5e6;
    double z = 0.9;
    double noise_psd = 1e-19;
    double p_max = 1.0;
    double gain_reference = 100.0;  // power gain at 1 m before fading

    std::pair<double, double> sinr_target_range = {1.0, 4.0};

    // Keep first-link and second-link channels disjoint. Forced on when
    // single-link UEs are present.
    bool separate_tier_channels = false;
    int max_channels = 0;  // 0: unlimited

    std::uint64_t seed = 1;
};

/// Deterministic in `params.seed`. Throws std::invalid_argument on bad
/// parameters and std::runtime_error when channels or separations cannot be
/// satisfied.
Scenario generate(const GeneratorParams& params);

/// reference * fading * max(d, 1 m)^-alpha
double path_gain(double reference, double distance_m, double alpha, double fading);

enum class WorkedExampleCase { HighBackhaul, LimitedBackhaul };

/// Two UEs, a relay at (-2, 0) km, a picocell at (2, 0) km and the macrocell at
/// the origin; UE A at (-2, -2) km and UE B at (2, -2) km.
Scenario worked_example(WorkedExampleCase which);

/// Backhaul capacities used by the limited-backhaul worked example, bit/s.
struct WorkedExampleBackhaul {
    double relay;
    double pico;
    double macro;
};
WorkedExampleBackhaul worked_example_backhaul(WorkedExampleCase which);

}  // namespace hetnet
