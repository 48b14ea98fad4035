"""Dual-connectivity uplink power control simulator."""

from ._core import (
    BackhaulState,
    GeneratorParams,
    Policy,
    Scenario,
    analyze_system,
    assess_backhaul,
    bdt_update,
    build_matrices,
    classify_state,
    closed_form_equilibrium,
    evaluate_powers,
    generate,
    greedy_update,
    load_scenario,
    monte_carlo_preset,
    network_capacity,
    run,
    spectral_radius,
    validate_scenario,
    waterfill,
    worked_example,
)

__all__ = [
    "BackhaulState",
    "GeneratorParams",
    "Policy",
    "Scenario",
    "analyze_system",
    "assess_backhaul",
    "bdt_update",
    "build_matrices",
    "classify_state",
    "closed_form_equilibrium",
    "evaluate_powers",
    "generate",
    "greedy_update",
    "load_scenario",
    "monte_carlo_preset",
    "network_capacity",
    "run",
    "spectral_radius",
    "validate_scenario",
    "waterfill",
    "worked_example",
]
