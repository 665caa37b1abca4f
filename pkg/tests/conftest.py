#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Kept the Prefect environment and logging-handler cleanup fixtures
# - Added small-mesh scenario, discretization and block-system fixtures
# - Added a tiny run configuration for end-to-end CLI tests
#

# Copyright (c) 2026 poro-feti contributors
#
# This software is licensed under the MIT License.
# Refer to the LICENSE file for more details.

"""
Pytest configuration and fixtures for poro-feti tests.

Meshes are kept coarse (a handful of cells along the interface) so that the
whole suite except the ``slow`` verification runs stays fast.
"""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Generator

import pytest

from poro_feti.assembly.blocks import BlockSystem, assemble_block_system
from poro_feti.assembly.constraints import apply_constraints, build_constraints
from poro_feti.cli.parser_modules.run_config import RunConfig
from poro_feti.core.types import ScenarioName, SolverKind
from poro_feti.mesh.discretization import Discretization
from poro_feti.model.params import ModelParams
from poro_feti.model.scenarios import Scenario, barry_mercer_scenario, mms_scenario

SMALL_MESH = 4


@pytest.fixture(autouse=True, scope="session")
def disable_prefect_rich_output() -> Generator[None, None, None]:
    """Disable Prefect's Rich console output to avoid 'I/O operation on closed file' errors."""
    # Disable Rich output in Prefect during tests
    os.environ["PREFECT__LOGGING__ENABLE_RICH_LOGS"] = "false"
    os.environ["PREFECT_LOGGING_ENABLE_RICH_LOGS"] = "false"

    # Disable Prefect's server communication during tests
    os.environ["PREFECT__TESTING_MODE"] = "true"
    os.environ["PREFECT__SERVER__ANALYTICS_ENABLED"] = "false"
    os.environ["PREFECT__TELEMETRY__ENABLED"] = "false"

    # Use simpler logging
    os.environ["PREFECT__LOGGING__LEVEL"] = "WARNING"
    os.environ["PREFECT__LOGGING__COLORS"] = "false"

    # Also disable ANSI colors
    os.environ["NO_COLOR"] = "1"

    yield


@pytest.fixture(autouse=True)
def cleanup_logging_handlers() -> Generator[None, None, None]:
    """Clean up logging handlers after each test to avoid file handle issues."""
    yield

    try:
        import gc

        gc.collect()

        for logger_name in list(logging.Logger.manager.loggerDict.keys()):
            logger = logging.getLogger(logger_name)
            for handler in logger.handlers[:]:
                try:
                    handler.flush()
                    handler.close()
                except Exception:
                    pass
                logger.removeHandler(handler)

        root_logger = logging.getLogger()
        for handler in root_logger.handlers[:]:
            try:
                handler.flush()
                handler.close()
            except Exception:
                pass
    except Exception:
        pass


@pytest.fixture
def params() -> ModelParams:
    """Default material: E = 1e4, nu = 0.2, alpha = 1, c0 = 0.1, K = I."""
    return ModelParams()


@pytest.fixture
def mms(params: ModelParams) -> Scenario:
    """Manufactured-solution scenario cut down to two steps."""
    return mms_scenario(params, final_time=2e-2, time_step=1e-2)


@pytest.fixture
def barry_mercer(params: ModelParams) -> Scenario:
    """Barry-Mercer scenario cut down to three steps."""
    return barry_mercer_scenario(params, final_time=3e-2, time_step=1e-2)


@pytest.fixture
def small_disc(mms: Scenario) -> Discretization:
    """P2/P1 discretization with SMALL_MESH cells along the interface."""
    return mms.discretize(SMALL_MESH)


@pytest.fixture
def raw_system(mms: Scenario, small_disc: Discretization) -> BlockSystem:
    """Unconstrained blocks of the small MMS discretization."""
    return assemble_block_system(small_disc, mms.params, mms.time_step)


@pytest.fixture
def constrained_system(mms: Scenario, small_disc: Discretization, raw_system: BlockSystem) -> BlockSystem:
    """Small MMS blocks with the t = 0 Dirichlet pattern applied."""
    return apply_constraints(raw_system, build_constraints(mms, small_disc, 0.0))


@pytest.fixture
def tiny_config(tmp_path: Path) -> RunConfig:
    """Two-step MMS run on a 2-cell mesh writing into a temporary directory."""
    return RunConfig(
        scenario=ScenarioName.MMS,
        mesh=2,
        dt=1e-2,
        T=2e-2,
        solver=SolverKind.FETI_GENERALIZED,
        out=tmp_path / "out",
        quiet=True,
    )
