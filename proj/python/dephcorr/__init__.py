"""Coupled harmonic oscillators under local pure dephasing."""

from ._core import (
    DimensionError,
    IntegrationError,
    IntegrityError,
    ParameterError,
    SymmetryError,
    UnsupportedScenario,
    bath_driven_negativity,
    final_state,
    fit_power_law,
    hs_participation_ladder,
    hs_spectrum_full,
    isolated_linear_state,
    negativity_full,
    negativity_ladder,
    oracle_check,
    purity,
    run,
    scaling,
    scenario_config,
    scenario_names,
    width_boundary,
)

__all__ = [
    "DimensionError",
    "IntegrationError",
    "IntegrityError",
    "ParameterError",
    "SymmetryError",
    "UnsupportedScenario",
    "bath_driven_negativity",
    "final_state",
    "fit_power_law",
    "hs_participation_ladder",
    "hs_spectrum_full",
    "isolated_linear_state",
    "negativity_full",
    "negativity_ladder",
    "oracle_check",
    "purity",
    "run",
    "scaling",
    "scenario_config",
    "scenario_names",
    "width_boundary",
]
