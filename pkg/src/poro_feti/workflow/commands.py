#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Command bodies for solve, converge and barry-mercer
# - Output hooks wired into the time loop so artifacts survive a failed step
# - Acceptance checks raise AcceptanceError (exit code 3)
#

"""
Command implementations behind the Prefect flows.

These functions hold no Prefect state so tests can call them directly. Each
returns a process exit code; failures the CLI maps to exit codes are raised.
"""

from __future__ import annotations

import dataclasses
import logging
from pathlib import Path
from typing import Union

from ..assembly.blocks import assemble_block_system
from ..assembly.constraints import apply_constraints, build_constraints
from ..assembly.dump import dump_blocks
from ..core.constants import (
    BLOCK_DUMP_DIR,
    EXIT_SOLVER_FAILURE,
    EXIT_SUCCESS,
    MMS_FINAL_TIME,
    MMS_TIME_STEP,
    OSCILLATION_BOUND_FRACTION,
)
from ..core.exceptions import AcceptanceError
from ..core.types import RetentionPolicy, ScenarioName
from ..cli.parser_modules.run_config import RunConfig
from ..mesh.discretization import Discretization
from ..mesh.dofs import FieldOrders
from ..model.params import ModelParams
from ..model.scenarios import Scenario, get_scenario
from ..solver.pcg import PcgReport
from ..timeloop.state import StateSnapshot
from ..timeloop.stepper import SimulationResult, SolverSettings, StepHook, run_simulation
from ..timeloop.time_grid import TimeGrid
from ..ui.display import print_error_table, print_oscillation_summary, print_step_line
from ..utils.outputs import SnapshotWriter, SolverLog, write_convergence_csv, write_oscillation_report
from ..verify.convergence import RowRunner, StudySettings, convergence_study, order_window_violations
from ..verify.norms import state_errors
from ..verify.oscillation import OscillationMonitor, boundary_pressure_ceiling, peak_on_loaded_segment, pressure_peak_location

__all__ = [
    "build_params",
    "solver_settings",
    "study_settings",
    "execute_solve",
    "execute_converge",
    "execute_barry_mercer",
]

Logger = Union[logging.Logger, "logging.LoggerAdapter[logging.Logger]"]


def build_params(config: RunConfig, apply_nu: bool = True) -> ModelParams:
    """Default material with the E, nu and mu-convention overrides of ``config``."""
    params = ModelParams(convention=config.mu_convention)
    if config.E is not None:
        params = dataclasses.replace(params, E_P=config.E, E_E=config.E)
    if apply_nu and config.nu is not None:
        params = params.with_poisson(config.nu)
    return params


def solver_settings(config: RunConfig) -> SolverSettings:
    return SolverSettings(kind=config.solver, tol=config.tol, max_iter=config.max_iters, concurrent=config.concurrent)


def study_settings(config: RunConfig) -> StudySettings:
    """Settings of a convergence study; nu comes from ``config.nus`` instead of ``config.nu``."""
    return StudySettings(
        orders=FieldOrders(displacement=config.fe_order),
        params=build_params(config, apply_nu=False),
        solver=solver_settings(config),
        final_time=config.T if config.T is not None else MMS_FINAL_TIME,
        time_step=config.dt if config.dt is not None else MMS_TIME_STEP,
    )


def _scenario(config: RunConfig, name: ScenarioName) -> tuple[Scenario, Discretization]:
    scenario = get_scenario(name, build_params(config), final_time=config.T, time_step=config.dt)
    return scenario, scenario.discretize(config.mesh, FieldOrders(displacement=config.fe_order))


def _dump(scenario: Scenario, disc: Discretization, out: Path, logger: Logger) -> None:
    grid = TimeGrid.from_scenario(scenario)
    system = assemble_block_system(disc, scenario.params, grid.tau)
    system = apply_constraints(system, build_constraints(scenario, disc, grid.t(0)))
    paths = dump_blocks(system, out / BLOCK_DUMP_DIR, logger)
    logger.info(f"Wrote {len(paths)} matrix blocks to {out / BLOCK_DUMP_DIR}")


def _progress(state: StateSnapshot, report: PcgReport) -> None:
    print_step_line(state.n, state.t, report)


def _run_with_outputs(
    config: RunConfig,
    scenario: Scenario,
    disc: Discretization,
    extra_hooks: tuple[StepHook, ...],
    retention: RetentionPolicy,
    logger: Logger,
) -> tuple[SimulationResult, SnapshotWriter]:
    if config.dump_blocks:
        _dump(scenario, disc, config.out, logger)
    writer = SnapshotWriter(disc, config.out, config.stride)
    with SolverLog(config.out) as solver_log:
        hooks: list[StepHook] = [writer, solver_log, *extra_hooks]
        if not config.quiet:
            hooks.append(_progress)
        result = run_simulation(scenario, disc, solver_settings(config), retention, hooks, logger)
    return result, writer


def _unconverged_steps(result: SimulationResult) -> list[int]:
    return [k + 1 for k, report in enumerate(result.reports) if not report.converged]


def execute_solve(config: RunConfig, logger: Logger) -> int:
    """Single run of the configured scenario with VTK snapshots and the solver log.

    Returns:
        EXIT_SUCCESS, or EXIT_SOLVER_FAILURE if any step ended unconverged
    """
    scenario, disc = _scenario(config, config.scenario)
    result, writer = _run_with_outputs(config, scenario, disc, (), config.retain, logger)

    if scenario.exact is not None:
        err_u, err_p = state_errors(result.final, scenario.exact, disc)
        logger.info(f"Final-step L2 errors: u={err_u:.4e}, p={err_p:.4e}")
    logger.info(f"Wrote {len(writer.written)} snapshots to {config.out}")

    unconverged = _unconverged_steps(result)
    if unconverged:
        logger.error(f"PCG did not reach tol={config.tol} at {len(unconverged)} step(s), first at step {unconverged[0]}")
        return EXIT_SOLVER_FAILURE
    return EXIT_SUCCESS


def execute_converge(config: RunConfig, logger: Logger, runner: RowRunner | None = None) -> int:
    """Convergence study over ``config.mesh_sizes`` x ``config.nus`` on the manufactured solution.

    Args:
        config: Run configuration
        logger: Logger instance
        runner: Optional row runner (the flow passes one backed by Prefect tasks)

    Returns:
        EXIT_SUCCESS, or EXIT_SOLVER_FAILURE if a row failed

    Raises:
        AcceptanceError: If an overall order falls outside its accepted window
    """
    table = convergence_study(config.mesh_sizes, config.nus, study_settings(config), runner, logger)
    path = write_convergence_csv(table, config.out)
    logger.info(f"Wrote convergence table to {path}")
    if not config.quiet:
        print_error_table(table.rows, logger)

    problems = order_window_violations(table, config.fe_order)
    if problems:
        raise AcceptanceError("convergence orders out of range: " + "; ".join(problems))
    return EXIT_SOLVER_FAILURE if table.failures else EXIT_SUCCESS


def execute_barry_mercer(config: RunConfig, logger: Logger) -> int:
    """Barry-Mercer benchmark with the pressure oscillation and peak-location checks.

    Raises:
        AcceptanceError: If a nodal pressure leaves the admissible band or the
            pressure maximum is away from the loaded segment
    """
    scenario, disc = _scenario(config, ScenarioName.BARRY_MERCER)
    ceiling = boundary_pressure_ceiling(TimeGrid.from_scenario(scenario).times())
    monitor = OscillationMonitor(bound=OSCILLATION_BOUND_FRACTION * ceiling, ceiling=ceiling)
    result, writer = _run_with_outputs(config, scenario, disc, (monitor,), RetentionPolicy.LAST_TWO, logger)

    final = result.final
    if final.n % config.stride != 0:
        writer.write(final)
    report = monitor.report()
    peak = pressure_peak_location(final.p, disc.poro.scalar)
    on_segment = peak_on_loaded_segment(peak, disc.h, disc.poro.mesh.rect.y0)
    write_oscillation_report(report, config.out, peak, {"peak_on_loaded_segment": on_segment, "steps": final.n})
    if not config.quiet:
        print_oscillation_summary(report, peak)

    if not report.passed:
        raise AcceptanceError(f"pressure oscillation: value {report.worst_violation:.4e} at step {report.worst_step} outside the admissible band")
    if not on_segment:
        raise AcceptanceError(f"pressure maximum at ({peak[0]:.4f}, {peak[1]:.4f}) is not on or next to the loaded segment")
    unconverged = _unconverged_steps(result)
    if unconverged:
        logger.error(f"PCG did not reach tol={config.tol} at {len(unconverged)} step(s)")
        return EXIT_SOLVER_FAILURE
    return EXIT_SUCCESS
