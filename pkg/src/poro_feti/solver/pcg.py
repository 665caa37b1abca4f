#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Preconditioned conjugate gradients on the interface multiplier
# - Breakdown detection and the CG energy-error estimate
#

"""
PCG driver for the FETI interface problem.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from ..core.constants import BREAKDOWN_TOLERANCE, DEFAULT_MAX_ITERATIONS, DEFAULT_PCG_TOLERANCE
from ..core.exceptions import IndefiniteOperatorError, SolverConvergenceError, SolverError
from ..core.types import FloatArray, LoggerType, SolverKind, SubdomainId
from .operators import FetiOperator, operator_apply, preconditioner_apply

__all__ = ["PcgReport", "feti_pcg"]


@dataclass
class PcgReport:
    """Outcome of one interface solve.

    Attributes:
        iterations: PCG iterations performed
        relative_residual: sqrt(<r, M^{-1} r>) / sqrt(<F, M^{-1} F>) at exit
        converged: Whether the tolerance was met
        residual_history: Relative preconditioned residual per iterate, starting at the initial guess
        energy_history: CG estimate of the K-norm error per iterate
        solve_times: Seconds spent in each subdomain's solves
        variant: Which solver produced the report
        wall_time: Seconds for the whole solve
    """

    iterations: int
    relative_residual: float
    converged: bool
    residual_history: list[float] = field(default_factory=list)
    energy_history: list[float] = field(default_factory=list)
    solve_times: dict[SubdomainId, float] = field(default_factory=dict)
    variant: SolverKind = SolverKind.FETI_GENERALIZED
    wall_time: float = 0.0


def _energy_tail(contributions: list[float]) -> list[float]:
    tail = np.cumsum(np.asarray(contributions[::-1], dtype=np.float64))[::-1]
    return [math.sqrt(max(v, 0.0)) for v in tail]


def feti_pcg(
    op: FetiOperator,
    rhs: FloatArray,
    lam_init: FloatArray | None = None,
    tol: float = DEFAULT_PCG_TOLERANCE,
    max_iter: int = DEFAULT_MAX_ITERATIONS,
    strict: bool = False,
    logger: LoggerType = None,
) -> tuple[FloatArray, PcgReport]:
    """Solve K lam = F by preconditioned conjugate gradients.

    Args:
        op: Interface operator
        rhs: F from ``feti_rhs``
        lam_init: Warm start, zero when omitted
        tol: Relative preconditioned residual tolerance
        max_iter: Iteration limit
        strict: Raise instead of returning when the limit is reached
        logger: Optional logger

    Returns:
        Tuple of (multiplier, report)

    Raises:
        SolverError: If ``tol`` or ``max_iter`` is not positive
        IndefiniteOperatorError: If a search direction has non-positive curvature
            or the preconditioner is not positive
        SolverConvergenceError: If ``strict`` and the limit is reached
    """
    if tol <= 0.0:
        raise SolverError(f"PCG tolerance must be positive, got {tol}")
    if max_iter < 0:
        raise SolverError(f"PCG iteration limit must be non-negative, got {max_iter}")
    start = time.perf_counter()
    op.executor.reset_timers()
    F = op._check(rhs, "right-hand side")

    ref2 = float(F @ preconditioner_apply(op, F))
    if ref2 < 0.0:
        raise IndefiniteOperatorError("preconditioner is not positive on the right-hand side")
    if ref2 == 0.0:
        report = PcgReport(0, 0.0, True, [0.0], [], dict(op.executor.elapsed), op.variant, time.perf_counter() - start)
        return np.zeros(op.size), report
    ref = math.sqrt(ref2)

    lam = np.zeros(op.size) if lam_init is None else op._check(lam_init, "initial multiplier").copy()
    r = F - operator_apply(op, lam) if lam.any() else F.copy()
    z = preconditioner_apply(op, r)
    rz = float(r @ z)
    if rz < 0.0:
        raise IndefiniteOperatorError("preconditioner is not positive on the initial residual")
    history = [math.sqrt(rz) / ref]
    contributions: list[float] = []
    p = z.copy()
    iterations = 0

    while history[-1] > tol and iterations < max_iter:
        q = operator_apply(op, p)
        pq = float(p @ q)
        if pq <= BREAKDOWN_TOLERANCE * float(p @ p):
            raise IndefiniteOperatorError(f"non-positive curvature <p, Kp> = {pq:.3e} at iteration {iterations}")
        alpha = rz / pq
        lam += alpha * p
        r -= alpha * q
        z = preconditioner_apply(op, r)
        rz_next = float(r @ z)
        if rz_next < 0.0:
            raise IndefiniteOperatorError(f"preconditioner is not positive at iteration {iterations}")
        contributions.append(alpha * rz)
        p = z + (rz_next / rz) * p
        rz = rz_next
        iterations += 1
        history.append(math.sqrt(rz) / ref)

    report = PcgReport(
        iterations=iterations,
        relative_residual=history[-1],
        converged=history[-1] <= tol,
        residual_history=history,
        energy_history=_energy_tail(contributions),
        solve_times=dict(op.executor.elapsed),
        variant=op.variant,
        wall_time=time.perf_counter() - start,
    )
    if not report.converged:
        message = f"PCG stopped after {iterations} iterations at relative residual {report.relative_residual:.3e} (tol {tol:.1e})"
        if strict:
            raise SolverConvergenceError(message)
        if logger:
            logger.warning(message)
    elif logger:
        logger.debug(f"PCG converged in {iterations} iterations, relative residual {report.relative_residual:.3e}")
    return lam, report
