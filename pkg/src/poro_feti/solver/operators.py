#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Interface operators of the generalized and Schur FETI variants
# - Dirichlet-type preconditioners and the reduced right-hand side
# - Dense materialization for the SPD and symmetry checks
#

"""
FETI interface operators.

Both variants act on the kept multiplier dofs and represent the same operator

    K = sum_D H_D* M_D^{-1} H_D*^T

generalized: K applied with full saddle solves, preconditioner
             sum_D H_D* M_D H_D*^T (only the A_BB block survives, no solves)
schur:       K = sum_D H_D,B S_D^{-1} H_D,B^T on the trace dofs B, with
             S_D = M_BB - M_BI M_II^{-1} M_IB and preconditioner
             sum_D H_D,B S_D H_D,B^T

The reduced right-hand side is F = sum_D H_D* M_D^{-1} b_D - g. For the Schur
variant the saddle solve is split into the condensed trace load
F_B - M_BI M_II^{-1} F_I followed by S^{-1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
import scipy.sparse as sp

from ..core.exceptions import DimensionMismatchError, SolverError
from ..core.types import FloatArray, LoggerType, SolverKind, SubdomainId
from ..assembly.blocks import BlockSystem
from .factorization import SchurComplement, SubdomainFactorization, factor_subdomain, schur_complement
from .parallel import SubdomainExecutor

__all__ = [
    "FetiOperator",
    "build_feti_operator",
    "operator_apply",
    "preconditioner_apply",
    "feti_rhs",
    "materialize",
]

FETI_VARIANTS = (SolverKind.FETI_GENERALIZED, SolverKind.FETI_SCHUR)


@dataclass(eq=False)
class FetiOperator:
    """Interface operator, preconditioner and subdomain factors of one variant.

    Attributes:
        variant: FETI_GENERALIZED or FETI_SCHUR
        system: Constrained block system
        couplings: H_D* on the kept multipliers over the full saddle vector
        factors: Saddle factorizations (both variants, used for back-substitution
            in the generalized variant)
        schur: Trace Schur complements (Schur variant only)
        trace_couplings: H_D,B, the trace columns of H_D* (Schur variant only)
        preconditioner: Assembled sum_D H_D* M_D H_D*^T (generalized variant only)
        executor: Runs the two subdomain terms
    """

    variant: SolverKind
    system: BlockSystem
    couplings: Mapping[SubdomainId, sp.csr_matrix]
    factors: Mapping[SubdomainId, SubdomainFactorization] = field(default_factory=dict)
    schur: Mapping[SubdomainId, SchurComplement] = field(default_factory=dict)
    trace_couplings: Mapping[SubdomainId, sp.csr_matrix] = field(default_factory=dict)
    preconditioner: sp.csr_matrix | None = None
    executor: SubdomainExecutor = field(default_factory=SubdomainExecutor)

    @property
    def size(self) -> int:
        return self.system.n_multipliers

    def _check(self, vector: FloatArray, what: str) -> FloatArray:
        vector = np.asarray(vector, dtype=np.float64)
        if vector.shape != (self.size,):
            raise DimensionMismatchError(f"{what} has shape {vector.shape}, expected ({self.size},)")
        return vector

    def saddle_solve(self, sid: SubdomainId, rhs: FloatArray) -> FloatArray:
        """M_D^{-1} rhs."""
        return self.factors[sid].solve(rhs)


def build_feti_operator(
    system: BlockSystem,
    variant: SolverKind = SolverKind.FETI_GENERALIZED,
    executor: SubdomainExecutor | None = None,
    node_coords: Mapping[SubdomainId, FloatArray] | None = None,
    logger: LoggerType = None,
) -> FetiOperator:
    """Factorize both subdomains and assemble the variant's preconditioner.

    Args:
        system: Block system with constraints applied
        variant: FETI_GENERALIZED or FETI_SCHUR
        executor: Subdomain executor, serial when omitted
        node_coords: Displacement node coordinates per subdomain; enables the
            floating-subdomain test
        logger: Optional logger

    Returns:
        Ready-to-use operator

    Raises:
        SolverError: If ``variant`` is not a FETI variant
        SingularSubproblemError: If a subdomain cannot be factorized
    """
    variant = SolverKind(variant)
    if variant not in FETI_VARIANTS:
        raise SolverError(f"{variant.value} is not a FETI variant")
    executor = executor or SubdomainExecutor()
    coords = node_coords or {}
    factors = executor.run(lambda sid: factor_subdomain(system, sid, coords.get(sid), logger))
    couplings = {sid: system.coupling(sid) for sid in SubdomainId}
    op = FetiOperator(variant=variant, system=system, couplings=couplings, factors=factors, executor=executor)
    if variant is SolverKind.FETI_SCHUR:
        op.schur = executor.run(lambda sid: schur_complement(system, sid, logger))
        op.trace_couplings = {sid: sp.csr_matrix(couplings[sid][:, op.schur[sid].boundary]) for sid in SubdomainId}
    else:
        op.preconditioner = sp.csr_matrix(
            sum(couplings[sid] @ system.saddle(sid) @ couplings[sid].T for sid in SubdomainId)
        )
    executor.reset_timers()
    if logger:
        logger.debug(f"Built {variant.value} operator on {system.n_multipliers} multiplier dofs")
    return op


def _sum(op: FetiOperator, terms: Mapping[SubdomainId, FloatArray]) -> FloatArray:
    # fixed P-then-E order keeps serial and threaded runs bitwise identical
    total = np.zeros(op.size)
    for sid in (SubdomainId.P, SubdomainId.E):
        total += terms[sid]
    return total


def operator_apply(op: FetiOperator, lam: FloatArray) -> FloatArray:
    """K lam with one independent solve per subdomain."""
    lam = op._check(lam, "multiplier vector")
    if op.variant is SolverKind.FETI_SCHUR:

        def term(sid: SubdomainId) -> FloatArray:
            hb = op.trace_couplings[sid]
            return hb @ op.schur[sid].solve(hb.T @ lam)

    else:

        def term(sid: SubdomainId) -> FloatArray:
            h = op.couplings[sid]
            return h @ op.saddle_solve(sid, h.T @ lam)

    return _sum(op, op.executor.run(term))


def preconditioner_apply(op: FetiOperator, r: FloatArray) -> FloatArray:
    """z = M^{-1} r (the Dirichlet-type preconditioner)."""
    r = op._check(r, "residual")
    if op.variant is SolverKind.FETI_SCHUR:

        def term(sid: SubdomainId) -> FloatArray:
            hb = op.trace_couplings[sid]
            return hb @ op.schur[sid].apply(hb.T @ r)

        return _sum(op, op.executor.run(term))
    assert op.preconditioner is not None
    return op.preconditioner @ r


def feti_rhs(op: FetiOperator, rhs: Mapping[SubdomainId, FloatArray], lift: FloatArray | None = None) -> FloatArray:
    """F = sum_D H_D* M_D^{-1} b_D - g.

    Args:
        op: Interface operator
        rhs: Constrained saddle right-hand sides per subdomain
        lift: Multiplier right-hand side g from prescribed trace values

    Returns:
        Right-hand side of the interface problem
    """
    if op.variant is SolverKind.FETI_SCHUR:

        def term(sid: SubdomainId) -> FloatArray:
            s = op.schur[sid]
            return op.trace_couplings[sid] @ s.solve(s.condense(rhs[sid]))

    else:

        def term(sid: SubdomainId) -> FloatArray:
            return op.couplings[sid] @ op.saddle_solve(sid, rhs[sid])

    total = _sum(op, op.executor.run(term))
    if lift is not None:
        total -= op._check(lift, "multiplier lift")
    return total


def materialize(op: FetiOperator) -> tuple[FloatArray, FloatArray]:
    """Dense K and M^{-1}, built column by column (tiny meshes only)."""
    n = op.size
    k = np.empty((n, n))
    m = np.empty((n, n))
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        k[:, j] = operator_apply(op, e)
        m[:, j] = preconditioner_apply(op, e)
    return k, m
