#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Initial creation of workflow module
#

"""
Workflow module for poro-feti.

Command bodies live in ``commands``; ``flows`` wraps them as Prefect flows.
"""

from .commands import (
    build_params,
    execute_barry_mercer,
    execute_converge,
    execute_solve,
    solver_settings,
    study_settings,
)
from .flows import barry_mercer_flow, converge_flow, convergence_row_task, solve_flow

__all__ = [
    "build_params",
    "execute_barry_mercer",
    "execute_converge",
    "execute_solve",
    "solver_settings",
    "study_settings",
    "barry_mercer_flow",
    "converge_flow",
    "convergence_row_task",
    "solve_flow",
]
