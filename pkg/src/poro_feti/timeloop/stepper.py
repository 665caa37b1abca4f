#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Simulation context with matrices assembled and factorized once
# - Backward Euler step through FETI or the monolithic solve, both factorized once per run
# - Time loop with snapshot retention and per-step hooks
#

"""
Backward Euler time marching.

The coefficients do not depend on time, so the constrained blocks and the
subdomain factorizations are built once in ``prepare_simulation``. Each step
only reassembles the loads, lifts the Dirichlet values and solves.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from types import TracebackType
from typing import Callable, Sequence

import numpy as np

from ..core.constants import DEFAULT_MAX_ITERATIONS, DEFAULT_PCG_TOLERANCE
from ..core.exceptions import PoroFetiError, SimulationStepError
from ..core.types import FieldKind, FloatArray, LoggerType, RetentionPolicy, SolverKind, SubdomainId
from ..assembly.blocks import BlockSystem, assemble_block_system
from ..assembly.constraints import apply_constraints, build_constraints, constrain_rhs, prescribed_vector
from ..assembly.loads import StepLoads, assemble_rhs_step, saddle_rhs
from ..mesh.discretization import Discretization
from ..model.scenarios import Scenario
from ..solver.back_substitution import back_substitute
from ..solver.monolithic import MonolithicFactorization, factor_monolithic, monolithic_solve
from ..solver.operators import FetiOperator, build_feti_operator, feti_rhs
from ..solver.parallel import SubdomainExecutor
from ..solver.pcg import PcgReport, feti_pcg
from .state import StateSnapshot, project_initial
from .time_grid import TimeGrid

__all__ = [
    "SolverSettings",
    "SimulationContext",
    "SimulationResult",
    "StepHook",
    "prepare_simulation",
    "advance_step",
    "run_simulation",
    "mass_balance_residual",
]


@dataclass(frozen=True)
class SolverSettings:
    """Per-step solver choices."""

    kind: SolverKind = SolverKind.FETI_GENERALIZED
    tol: float = DEFAULT_PCG_TOLERANCE
    max_iter: int = DEFAULT_MAX_ITERATIONS
    warm_start: bool = True
    concurrent: bool = False
    strict: bool = False


@dataclass(eq=False)
class SimulationContext:
    """Everything that stays fixed over the time loop."""

    scenario: Scenario
    disc: Discretization
    system: BlockSystem
    grid: TimeGrid
    settings: SolverSettings
    executor: SubdomainExecutor
    operator: FetiOperator | None = None
    monolithic: MonolithicFactorization | None = None

    def close(self) -> None:
        self.executor.close()

    def __enter__(self) -> "SimulationContext":
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc: BaseException | None,
        tb: TracebackType | None,
    ) -> None:
        self.close()


StepHook = Callable[[StateSnapshot, PcgReport], None]


@dataclass
class SimulationResult:
    """Retained snapshots (initial state first) and one report per step."""

    snapshots: list[StateSnapshot] = field(default_factory=list)
    reports: list[PcgReport] = field(default_factory=list)

    @property
    def final(self) -> StateSnapshot:
        return self.snapshots[-1]


def prepare_simulation(
    scenario: Scenario,
    disc: Discretization,
    settings: SolverSettings | None = None,
    logger: LoggerType = None,
) -> SimulationContext:
    """Assemble, constrain and factorize once for the whole run.

    Raises:
        SimulationStepError: At step 0 if assembly or factorization fails
    """
    settings = settings or SolverSettings()
    grid = TimeGrid.from_scenario(scenario)
    executor = SubdomainExecutor(concurrent=settings.concurrent)
    try:
        system = assemble_block_system(disc, scenario.params, grid.tau)
        system = apply_constraints(system, build_constraints(scenario, disc, grid.t(0)))
        operator = None
        monolithic = None
        if settings.kind is SolverKind.MONOLITHIC:
            monolithic = factor_monolithic(system, logger)
        else:
            coords = {sid: disc.subdomain(sid).displacement.node_coords for sid in SubdomainId}
            operator = build_feti_operator(system, settings.kind, executor, coords, logger)
    except PoroFetiError as e:
        executor.close()
        raise SimulationStepError(str(e), 0, getattr(e, "subdomain", None)) from e
    if logger:
        logger.info(
            f"Prepared {scenario.name.value}: h={disc.h:.4g}, tau={grid.tau:.3g}, {grid.n_steps} steps, "
            f"{system.n_multipliers} multiplier dofs, solver {settings.kind.value}"
        )
    return SimulationContext(scenario, disc, system, grid, settings, executor, operator, monolithic)


def _step_rhs(ctx: SimulationContext, t: float, eta_prev: FloatArray) -> tuple[StepLoads, dict[SubdomainId, FloatArray], FloatArray]:
    system = ctx.system
    loads = assemble_rhs_step(ctx.scenario, ctx.disc, system, t, eta_prev)
    constraints = build_constraints(ctx.scenario, ctx.disc, t)
    rhs = {sid: constrain_rhs(system, sid, saddle_rhs(system, loads, sid), constraints) for sid in SubdomainId}
    lift = system.multiplier_lift({sid: prescribed_vector(system, sid, constraints) for sid in SubdomainId})
    return loads, rhs, lift


def advance_step(ctx: SimulationContext, prev: StateSnapshot, logger: LoggerType = None) -> tuple[StateSnapshot, PcgReport]:
    """Solve step n = prev.n + 1.

    Args:
        ctx: Prepared simulation
        prev: Snapshot at t_{n-1}
        logger: Optional logger

    Returns:
        Tuple of (snapshot at t_n, solver report)

    Raises:
        SimulationStepError: On any failure, with the step index and, when known,
            the subdomain attached
    """
    n = prev.n + 1
    settings = ctx.settings
    try:
        t = ctx.grid.t(n)
        _, rhs, lift = _step_rhs(ctx, t, prev.eta)
        if ctx.monolithic is not None:
            solution, lam, err = monolithic_solve(ctx.system, rhs, lift, logger, ctx.monolithic)
            report = PcgReport(0, err, True, [err], [], {}, SolverKind.MONOLITHIC)
        else:
            assert ctx.operator is not None
            F = feti_rhs(ctx.operator, rhs, lift)
            warm = prev.lam if settings.warm_start and prev.lam.shape == (ctx.system.n_multipliers,) else None
            lam, report = feti_pcg(ctx.operator, F, warm, settings.tol, settings.max_iter, settings.strict, logger)
            solution = back_substitute(ctx.operator, lam, rhs)
            report.solve_times = dict(ctx.executor.elapsed)
    except SimulationStepError:
        raise
    except (PoroFetiError, IndexError) as e:
        raise SimulationStepError(str(e), n, getattr(e, "subdomain", None)) from e
    state = StateSnapshot.from_saddle(ctx.system, solution, lam, n, t)
    if logger:
        logger.debug(f"step {n} t={t:.6g} iterations={report.iterations} residual={report.relative_residual:.3e}")
    return state, report


def mass_balance_residual(ctx: SimulationContext, prev: StateSnapshot, state: StateSnapshot) -> float:
    """Relative residual of -R eta^n - tau A_f p^n = -R eta^{n-1} - tau Z^n on free pressure rows."""
    system = ctx.system
    loads = assemble_rhs_step(ctx.scenario, ctx.disc, system, state.t, prev.eta)
    assert system.poro.Af is not None
    lhs = -(system.poro.R @ state.eta) - system.tau * (system.poro.Af @ state.p)
    layout = system.layout(SubdomainId.P)
    sl = layout.field_slice(FieldKind.FLUID_PRESSURE)
    fixed = system.constrained_dofs(SubdomainId.P)
    free = np.setdiff1d(np.arange(sl.stop - sl.start), fixed[(fixed >= sl.start) & (fixed < sl.stop)] - sl.start)
    residual = (lhs - loads.mass_balance)[free]
    scale = np.linalg.norm(loads.mass_balance[free]) + np.linalg.norm((system.poro.R @ state.eta)[free])
    return float(np.linalg.norm(residual) / scale) if scale > 0.0 else float(np.linalg.norm(residual))


def run_simulation(
    scenario: Scenario,
    disc: Discretization,
    settings: SolverSettings | None = None,
    retention: RetentionPolicy = RetentionPolicy.FULL,
    hooks: Sequence[StepHook] = (),
    logger: LoggerType = None,
) -> SimulationResult:
    """March from t_0 to T.

    Hooks run after every step, so files they write survive a later failure.

    Args:
        scenario: Problem data and time horizon
        disc: Discretization
        settings: Solver settings
        retention: Keep every snapshot or only the last two
        hooks: Callables invoked with each new snapshot and its report
        logger: Optional logger

    Returns:
        Retained snapshots and all reports

    Raises:
        SimulationStepError: If a step fails
    """
    with prepare_simulation(scenario, disc, settings, logger) as ctx:
        state = project_initial(scenario, disc, ctx.system.n_multipliers, ctx.system)
        kept: deque[StateSnapshot] = deque([state], maxlen=2 if retention is RetentionPolicy.LAST_TWO else None)
        reports: list[PcgReport] = []
        for _ in range(ctx.grid.n_steps):
            state, report = advance_step(ctx, state, logger)
            kept.append(state)
            reports.append(report)
            for hook in hooks:
                hook(state, report)
    return SimulationResult(snapshots=list(kept), reports=reports)
