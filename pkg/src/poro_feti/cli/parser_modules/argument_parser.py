#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Argparse configuration for the solve, converge and barry-mercer commands
# - Flags default to None so config-file values survive unless overridden
#

"""
Argument parser configuration for the poro-feti CLI.
"""

from __future__ import annotations

import argparse

from ...core.config import DEFAULT_CONFIG_FILE, DEFAULT_OUTPUT_DIR, SCRIPT_NAME
from ...core.constants import DEFAULT_MAX_ITERATIONS, DEFAULT_MESH_SUBDIVISIONS, DEFAULT_PCG_TOLERANCE
from ...core.types import Command, MuConvention, RetentionPolicy, ScenarioName, SolverKind

__all__ = ["create_argument_parser"]


def create_argument_parser() -> argparse.ArgumentParser:
    """Create and configure the argument parser.

    Returns:
        Configured ArgumentParser instance
    """
    parser = argparse.ArgumentParser(
        prog="poro-feti",
        description=f"{SCRIPT_NAME}\n"
        "Backward Euler time stepping of Biot poroelasticity (lower half of the unit square) "
        "coupled to linear elasticity (upper half), each step solved by FETI iteration on the "
        "interface multiplier.",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    parser.add_argument(
        "command",
        choices=[c.value for c in Command],
        help="solve: one run with snapshots and solver log\n"
        "converge: manufactured-solution error table over mesh sizes and Poisson ratios\n"
        "barry-mercer: benchmark run with the pressure oscillation check",
    )
    parser.add_argument(
        "--config",
        type=str,
        metavar="PATH",
        help=f"Flat key = value config file (for example ./{DEFAULT_CONFIG_FILE}). Flags override its values.",
    )

    problem_group = parser.add_argument_group("Problem")
    problem_group.add_argument("--scenario", choices=[s.value for s in ScenarioName], help="Scenario for 'solve' (default: mms).")
    problem_group.add_argument("--mesh", type=int, metavar="N", help=f"Cells along the interface (default: {DEFAULT_MESH_SUBDIVISIONS}).")
    problem_group.add_argument("--fe-order", type=int, choices=[1, 2], help="Displacement order; scalars are always P1 (default: 2).")
    problem_group.add_argument("--nu", type=float, help="Poisson ratio of both subdomains (default: scenario value).")
    problem_group.add_argument("--E", dest="E", type=float, help="Young's modulus of both subdomains (default: scenario value).")
    problem_group.add_argument("--mu-convention", choices=[m.value for m in MuConvention], help="Shear modulus from (E, nu): unhalved E/(1+nu) or standard E/(2(1+nu)).")
    problem_group.add_argument("--dt", type=float, help="Time step (default: scenario value).")
    problem_group.add_argument("--T", dest="T", type=float, help="Final time (default: scenario value).")

    solver_group = parser.add_argument_group("Solver")
    solver_group.add_argument("--solver", choices=[s.value for s in SolverKind], help="Per-step solver (default: feti-generalized).")
    solver_group.add_argument("--tol", type=float, help=f"Relative preconditioned residual tolerance (default: {DEFAULT_PCG_TOLERANCE:g}).")
    solver_group.add_argument("--max-iters", type=int, help=f"PCG iteration limit (default: {DEFAULT_MAX_ITERATIONS}).")
    solver_group.add_argument("--concurrent", action="store_const", const=True, help="Run the two subdomain solves on worker threads.")

    study_group = parser.add_argument_group("Convergence study")
    study_group.add_argument("--mesh-sizes", type=str, metavar="N,N,...", help="Comma-separated mesh sizes for 'converge'.")
    study_group.add_argument("--nus", type=str, metavar="NU,NU,...", help="Comma-separated Poisson ratios for 'converge'.")

    output_group = parser.add_argument_group("Output Control")
    output_group.add_argument("--out", type=str, metavar="DIR", help=f"Output directory (default: ./{DEFAULT_OUTPUT_DIR}).")
    output_group.add_argument("--stride", type=int, help="Write every n-th snapshot as VTK (default: 1).")
    output_group.add_argument("--retain", choices=[r.value for r in RetentionPolicy], help="Snapshots kept in memory (default: full).")
    output_group.add_argument("--dump-blocks", action="store_const", const=True, help="Write the assembled blocks as matrix-market files.")
    output_group.add_argument(
        "--quiet",
        "-q",
        action="store_const",
        const=True,
        help="Suppress the script name and progress lines; log warnings and errors only.",
    )
    output_group.add_argument("--verbose", action="store_const", const=True, help="Enable DEBUG logging (per-step PCG reports).")

    return parser
