#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Error rows and tables with observed orders between consecutive meshes
# - Convergence study over mesh sizes and Poisson ratios with a pluggable row runner
# - Overall orders between the coarsest and finest mesh checked against accepted windows
#

"""
Convergence studies on the manufactured solution.

A study row runs the full time loop for one (nu, h) pair and records the
maximum over the time steps of the L2 errors. Rows are independent, so the
caller may supply a runner that executes them elsewhere (the workflow layer
submits them as Prefect tasks).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

from ..core.constants import DEFAULT_MESH_SIZES, DEFAULT_POISSON_SWEEP, MMS_FINAL_TIME, MMS_TIME_STEP, ORDER_WINDOWS
from ..core.exceptions import PoroFetiError, VerificationError
from ..core.types import LoggerType, RetentionPolicy
from ..mesh.dofs import FieldOrders
from ..model.params import ModelParams
from ..model.scenarios import mms_scenario
from ..solver.pcg import PcgReport
from ..timeloop.state import StateSnapshot
from ..timeloop.stepper import SolverSettings, run_simulation
from .norms import state_errors

__all__ = [
    "ErrorRow",
    "ErrorTable",
    "RowFailure",
    "RowRunner",
    "StudySettings",
    "estimate_order",
    "with_orders",
    "compute_error_row",
    "convergence_study",
    "overall_orders",
    "order_window_violations",
]


@dataclass(frozen=True)
class ErrorRow:
    """L-infinity-in-time L2 errors for one (nu, h) pair."""

    nu: float
    h: float
    err_u: float
    err_p: float
    order_u: float | None = None
    order_p: float | None = None


@dataclass(frozen=True)
class RowFailure:
    nu: float
    subdivisions: int
    message: str


@dataclass
class ErrorTable:
    """Rows grouped by nu, coarse to fine, plus the rows that failed."""

    rows: list[ErrorRow] = field(default_factory=list)
    failures: list[RowFailure] = field(default_factory=list)

    def for_nu(self, nu: float) -> list[ErrorRow]:
        return [r for r in self.rows if r.nu == nu]

    @property
    def nus(self) -> list[float]:
        return list(dict.fromkeys(r.nu for r in self.rows))


@dataclass(frozen=True)
class StudySettings:
    """Inputs shared by every row of a study."""

    orders: FieldOrders = field(default_factory=FieldOrders)
    params: ModelParams = field(default_factory=ModelParams)
    solver: SolverSettings = field(default_factory=SolverSettings)
    final_time: float = MMS_FINAL_TIME
    time_step: float = MMS_TIME_STEP


RowRunner = Callable[[float, int, StudySettings], ErrorRow]


def estimate_order(e_coarse: float, e_fine: float, h_coarse: float, h_fine: float) -> float:
    """log(e_coarse / e_fine) / log(h_coarse / h_fine).

    Raises:
        VerificationError: If an error is non-positive or the mesh sizes coincide
    """
    if e_coarse <= 0.0 or e_fine <= 0.0:
        raise VerificationError(f"errors must be positive to estimate an order, got {e_coarse} and {e_fine}")
    if h_coarse <= 0.0 or h_fine <= 0.0 or h_coarse == h_fine:
        raise VerificationError(f"mesh sizes {h_coarse} and {h_fine} do not define an order")
    return math.log(e_coarse / e_fine) / math.log(h_coarse / h_fine)


def with_orders(rows: Iterable[ErrorRow]) -> list[ErrorRow]:
    """Sort each nu group coarse to fine and fill in orders against the previous row."""
    out: list[ErrorRow] = []
    groups: dict[float, list[ErrorRow]] = {}
    for row in rows:
        groups.setdefault(row.nu, []).append(row)
    for group in groups.values():
        group.sort(key=lambda r: -r.h)
        out.append(replace(group[0], order_u=None, order_p=None))
        for prev, row in zip(group, group[1:]):
            out.append(
                replace(
                    row,
                    order_u=estimate_order(prev.err_u, row.err_u, prev.h, row.h),
                    order_p=estimate_order(prev.err_p, row.err_p, prev.h, row.h),
                )
            )
    return out


def compute_error_row(nu: float, subdivisions: int, settings: StudySettings, logger: LoggerType = None) -> ErrorRow:
    """Run the manufactured solution for one (nu, h) pair.

    Only the last two snapshots are retained; the error maximum is
    accumulated as the steps complete.
    """
    scenario = mms_scenario(settings.params.with_poisson(nu), settings.final_time, settings.time_step)
    assert scenario.exact is not None
    exact = scenario.exact
    disc = scenario.discretize(subdivisions, settings.orders)
    worst = [0.0, 0.0]

    def track(state: StateSnapshot, report: PcgReport) -> None:
        err_u, err_p = state_errors(state, exact, disc)
        worst[0] = max(worst[0], err_u)
        worst[1] = max(worst[1], err_p)

    run_simulation(scenario, disc, settings.solver, RetentionPolicy.LAST_TWO, [track], logger)
    if logger:
        logger.info(f"nu={nu} h=1/{subdivisions}: err_u={worst[0]:.4e} err_p={worst[1]:.4e}")
    return ErrorRow(nu=nu, h=disc.h, err_u=worst[0], err_p=worst[1])


def convergence_study(
    mesh_sizes: Sequence[int] = DEFAULT_MESH_SIZES,
    nus: Sequence[float] = DEFAULT_POISSON_SWEEP,
    settings: StudySettings | None = None,
    runner: RowRunner | None = None,
    logger: LoggerType = None,
) -> ErrorTable:
    """Errors and observed orders for every (nu, h) pair.

    A failed row is logged and recorded in ``failures``; the study continues.

    Args:
        mesh_sizes: Cells along the interface, one row each
        nus: Poisson ratios applied to both subdomains
        settings: Orders, material, solver and time horizon
        runner: Computes one row; defaults to ``compute_error_row``
        logger: Optional logger

    Returns:
        Table with orders between consecutive successful rows of each nu
    """
    settings = settings or StudySettings()
    run = runner or (lambda nu, n, s: compute_error_row(nu, n, s, logger))
    rows: list[ErrorRow] = []
    failures: list[RowFailure] = []
    for nu in nus:
        for n in mesh_sizes:
            try:
                rows.append(run(nu, n, settings))
            except PoroFetiError as e:
                if logger:
                    logger.error(f"Convergence row nu={nu} h=1/{n} failed: {e}")
                failures.append(RowFailure(nu=nu, subdivisions=n, message=str(e)))
    return ErrorTable(rows=with_orders(rows), failures=failures)


def overall_orders(rows: Sequence[ErrorRow]) -> tuple[float, float] | None:
    """Orders of (u, p) between the coarsest and finest row of one nu group."""
    if len(rows) < 2:
        return None
    coarse = max(rows, key=lambda r: r.h)
    fine = min(rows, key=lambda r: r.h)
    return (
        estimate_order(coarse.err_u, fine.err_u, coarse.h, fine.h),
        estimate_order(coarse.err_p, fine.err_p, coarse.h, fine.h),
    )


def order_window_violations(table: ErrorTable, displacement_order: int) -> list[str]:
    """Messages for every nu whose overall orders fall outside the accepted window.

    Groups with fewer than two rows are not checked.
    """
    (u_lo, u_hi), (p_lo, p_hi) = ORDER_WINDOWS[displacement_order]
    problems: list[str] = []
    for nu in table.nus:
        orders = overall_orders(table.for_nu(nu))
        if orders is None:
            continue
        order_u, order_p = orders
        if not u_lo <= order_u <= u_hi:
            problems.append(f"nu={nu}: displacement order {order_u:.2f} outside [{u_lo}, {u_hi}]")
        if not p_lo <= order_p <= p_hi:
            problems.append(f"nu={nu}: pressure order {order_p:.2f} outside [{p_lo}, {p_hi}]")
    return problems
