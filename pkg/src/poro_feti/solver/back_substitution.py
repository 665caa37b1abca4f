#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Subdomain recovery x_D = M_D^{-1}(b_D - H_D*^T lam)
#

"""
Recovery of the subdomain unknowns from a converged multiplier.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

from ..core.types import FloatArray, SolverKind, SubdomainId
from .operators import FetiOperator

__all__ = ["back_substitute", "interface_jump"]


def back_substitute(
    op: FetiOperator,
    lam: FloatArray,
    rhs: Mapping[SubdomainId, FloatArray],
) -> dict[SubdomainId, FloatArray]:
    """Solve both subdomain systems with the multiplier moved to the right-hand side.

    Args:
        op: Interface operator
        lam: Multiplier on the kept dofs
        rhs: Constrained saddle right-hand sides

    Returns:
        Saddle vectors per subdomain
    """
    lam = op._check(lam, "multiplier vector")
    if op.variant is SolverKind.FETI_SCHUR:

        def solve(sid: SubdomainId) -> FloatArray:
            s = op.schur[sid]
            b = np.asarray(rhs[sid], dtype=np.float64)
            x_b = s.solve(s.condense(b) - op.trace_couplings[sid].T @ lam)
            return s.expand(x_b, b)

    else:

        def solve(sid: SubdomainId) -> FloatArray:
            return op.saddle_solve(sid, np.asarray(rhs[sid], dtype=np.float64) - op.couplings[sid].T @ lam)

    return op.executor.run(solve)


def interface_jump(op: FetiOperator, solution: Mapping[SubdomainId, FloatArray], lift: FloatArray | None = None) -> FloatArray:
    """H_P* x_P + H_E* x_E - g, zero once the interface constraint holds."""
    jump = op.couplings[SubdomainId.P] @ solution[SubdomainId.P] + op.couplings[SubdomainId.E] @ solution[SubdomainId.E]
    return jump if lift is None else jump - lift
