#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Initial creation for time loop exports
#

"""
Backward Euler time loop.
"""

from .time_grid import TimeGrid
from .state import StateSnapshot, interpolate_scalar, interpolate_vector, project_initial, projected_divergence
from .stepper import (
    SimulationContext,
    SimulationResult,
    SolverSettings,
    StepHook,
    advance_step,
    mass_balance_residual,
    prepare_simulation,
    run_simulation,
)

__all__ = [
    "TimeGrid",
    "StateSnapshot",
    "interpolate_scalar",
    "interpolate_vector",
    "project_initial",
    "projected_divergence",
    "SimulationContext",
    "SimulationResult",
    "SolverSettings",
    "StepHook",
    "advance_step",
    "mass_balance_residual",
    "prepare_simulation",
    "run_simulation",
]
