#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Initial creation for model module exports
#

"""
Material parameters, the reformulation constants and the built-in scenarios.
"""

from .params import ModelParams, lame_from_young_poisson, derived_kappas, reformulate, recover_pressure_and_divergence
from .manufactured import ManufacturedSolution
from .scenarios import (
    BoundaryField,
    FacetCondition,
    SubdomainData,
    InitialData,
    ExactSolution,
    Scenario,
    outward_normal,
    loaded_segment_pressure,
    mms_scenario,
    barry_mercer_scenario,
    get_scenario,
)

__all__ = [
    # Parameters
    "ModelParams",
    "lame_from_young_poisson",
    "derived_kappas",
    "reformulate",
    "recover_pressure_and_divergence",
    # Scenarios
    "ManufacturedSolution",
    "BoundaryField",
    "FacetCondition",
    "SubdomainData",
    "InitialData",
    "ExactSolution",
    "Scenario",
    "outward_normal",
    "loaded_segment_pressure",
    "mms_scenario",
    "barry_mercer_scenario",
    "get_scenario",
]
