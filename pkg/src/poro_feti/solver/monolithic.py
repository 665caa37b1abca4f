#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Direct sparse solve of the complete coupled system
# - Coupled matrix assembled and factorized once per run, reused for every step
#

"""
Monolithic direct solve, used as the reference for the FETI variants.

Unknowns are ordered [x_P, x_E, lam] with the subdomain saddle layouts, and
the matrix is

    [[M_P,  0,    H_P*^T],
     [0,    M_E,  H_E*^T],
     [H_P*, H_E*, 0     ]]
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from ..core.types import FloatArray, LoggerType, SubdomainId
from ..assembly.blocks import BlockSystem
from .factorization import backward_error, factor_matrix

__all__ = ["MonolithicFactorization", "monolithic_matrix", "factor_monolithic", "monolithic_solve"]


@dataclass(frozen=True, eq=False)
class MonolithicFactorization:
    """LU factors of the constrained coupled matrix."""

    matrix: sp.csc_matrix
    lu: spla.SuperLU
    n_p: int
    n_e: int

    def solve(self, rhs: FloatArray) -> FloatArray:
        return self.lu.solve(np.asarray(rhs, dtype=np.float64))


def monolithic_matrix(system: BlockSystem) -> sp.csc_matrix:
    """Constrained coupled matrix over the kept multipliers."""
    m_p, m_e = system.saddle(SubdomainId.P), system.saddle(SubdomainId.E)
    h_p, h_e = system.coupling(SubdomainId.P), system.coupling(SubdomainId.E)
    return sp.bmat([[m_p, None, h_p.T], [None, m_e, h_e.T], [h_p, h_e, None]], format="csc")


def factor_monolithic(system: BlockSystem, logger: LoggerType = None) -> MonolithicFactorization:
    """Assemble and factorize the coupled matrix.

    Raises:
        SingularSubproblemError: If the coupled matrix is singular
    """
    matrix = monolithic_matrix(system)
    lu = factor_matrix(matrix, "coupled system")
    if logger:
        logger.debug(f"Factorized the coupled system: {matrix.shape[0]} unknowns, {matrix.nnz} nonzeros")
    return MonolithicFactorization(matrix, lu, system.layout(SubdomainId.P).size, system.layout(SubdomainId.E).size)


def monolithic_solve(
    system: BlockSystem,
    rhs: Mapping[SubdomainId, FloatArray],
    lift: FloatArray | None = None,
    logger: LoggerType = None,
    factors: MonolithicFactorization | None = None,
) -> tuple[dict[SubdomainId, FloatArray], FloatArray, float]:
    """Solve all unknowns of one step at once.

    Args:
        system: Constrained block system
        rhs: Constrained saddle right-hand sides
        lift: Multiplier right-hand side g
        logger: Optional logger
        factors: Factorization from ``factor_monolithic``; built here when omitted

    Returns:
        Tuple of (saddle vectors per subdomain, multiplier, backward error)

    Raises:
        SingularSubproblemError: If the coupled matrix is singular
    """
    factors = factors or factor_monolithic(system, logger)
    n_p, n_e = factors.n_p, factors.n_e
    g = np.zeros(system.n_multipliers) if lift is None else np.asarray(lift, dtype=np.float64)
    b = np.concatenate([np.asarray(rhs[SubdomainId.P], dtype=np.float64), np.asarray(rhs[SubdomainId.E], dtype=np.float64), g])
    x = factors.solve(b)
    err = backward_error(factors.matrix, x, b)
    if logger:
        logger.debug(f"Monolithic solve of {b.size} unknowns, backward error {err:.2e}")
    return {SubdomainId.P: x[:n_p], SubdomainId.E: x[n_p : n_p + n_e]}, x[n_p + n_e :], err
