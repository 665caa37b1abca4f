#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Prefect flows for the three CLI commands
# - Convergence rows submitted as concurrent Prefect tasks
#

"""
Prefect flows for poro-feti.
"""

from __future__ import annotations

from prefect import flow, task
from prefect.cache_policies import NONE
from prefect.futures import PrefectFuture

from ..cli.parser_modules.run_config import RunConfig
from ..utils.logger import get_logger as _get_logger
from ..verify.convergence import ErrorRow, StudySettings, compute_error_row
from .commands import execute_barry_mercer, execute_converge, execute_solve, study_settings

__all__ = ["solve_flow", "converge_flow", "barry_mercer_flow", "convergence_row_task"]


@task(name="Convergence row", cache_policy=NONE)
def convergence_row_task(nu: float, subdivisions: int, settings: StudySettings) -> ErrorRow:
    """One (nu, h) row of the convergence study."""
    return compute_error_row(nu, subdivisions, settings, _get_logger())


@flow(name="poro-feti solve", validate_parameters=False)
def solve_flow(config: RunConfig) -> int:
    """Single run with VTK snapshots and the solver log.

    Args:
        config: Resolved run configuration
    """
    logger = _get_logger(config.verbose, config.quiet)
    if config.verbose:
        logger.debug("Verbose mode enabled.")
    return execute_solve(config, logger)


@flow(name="poro-feti converge", validate_parameters=False)
def converge_flow(config: RunConfig) -> int:
    """Convergence study; every row runs as its own task.

    Args:
        config: Resolved run configuration
    """
    logger = _get_logger(config.verbose, config.quiet)
    settings = study_settings(config)
    futures: dict[tuple[float, int], PrefectFuture[ErrorRow]] = {
        (nu, n): convergence_row_task.submit(nu, n, settings) for nu in config.nus for n in config.mesh_sizes
    }

    def collect(nu: float, subdivisions: int, _: StudySettings) -> ErrorRow:
        return futures[(nu, subdivisions)].result()

    return execute_converge(config, logger, collect)


@flow(name="poro-feti barry-mercer", validate_parameters=False)
def barry_mercer_flow(config: RunConfig) -> int:
    """Barry-Mercer benchmark with the oscillation report.

    Args:
        config: Resolved run configuration
    """
    logger = _get_logger(config.verbose, config.quiet)
    return execute_barry_mercer(config, logger)
