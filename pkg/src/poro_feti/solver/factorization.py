#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - SuperLU factorization of the constrained subdomain saddle matrices
# - Floating-subdomain detection against rigid-body modes
# - Interface Schur complement with a dense Cholesky factor
#

"""
Subdomain factorizations.

The saddle matrices do not change between time steps, so each subdomain is
factorized once and the factors are shared read-only by every operator
application and back-substitution.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from ..core.constants import RIGID_MODE_TOLERANCE, SINGULARITY_TRIAL_SEED
from ..core.exceptions import SingularSubproblemError
from ..core.types import FieldKind, FloatArray, IntArray, LoggerType, SubdomainId
from ..assembly.blocks import BlockSystem, SaddleLayout, rigid_body_modes

__all__ = [
    "SubdomainFactorization",
    "SchurComplement",
    "factor_matrix",
    "factor_subdomain",
    "interface_dofs",
    "schur_complement",
    "backward_error",
]


def backward_error(matrix: sp.spmatrix, x: FloatArray, b: FloatArray) -> float:
    """||M x - b|| / (||M|| ||x|| + ||b||) in the infinity norm."""
    res = np.abs(matrix @ x - b).max(initial=0.0)
    scale = spla.norm(matrix, np.inf) * np.abs(x).max(initial=0.0) + np.abs(b).max(initial=0.0)
    return float(res / scale) if scale > 0.0 else 0.0


def factor_matrix(matrix: sp.spmatrix, label: str, subdomain: SubdomainId | None = None) -> spla.SuperLU:
    """SuperLU factors of a square sparse matrix.

    Raises:
        SingularSubproblemError: If SuperLU reports an exactly singular matrix
            or a trial solve is not finite
    """
    where = None if subdomain is None else SubdomainId(subdomain).value
    csc = sp.csc_matrix(matrix)
    try:
        lu = spla.splu(csc)
    except RuntimeError as e:
        raise SingularSubproblemError(f"{label}: factorization failed ({e})", where) from e
    trial = np.random.default_rng(SINGULARITY_TRIAL_SEED).standard_normal(csc.shape[0])
    if not np.all(np.isfinite(lu.solve(trial))):
        raise SingularSubproblemError(f"{label}: solve produced non-finite values", where)
    return lu


@dataclass(frozen=True, eq=False)
class SubdomainFactorization:
    """LU factors of one constrained saddle matrix."""

    subdomain: SubdomainId
    matrix: sp.csc_matrix
    layout: SaddleLayout
    lu: spla.SuperLU

    @property
    def size(self) -> int:
        return int(self.matrix.shape[0])

    def solve(self, rhs: FloatArray) -> FloatArray:
        return self.lu.solve(np.asarray(rhs, dtype=np.float64))


def _check_rigid_modes(matrix: sp.spmatrix, node_coords: FloatArray, sid: SubdomainId) -> None:
    modes = rigid_body_modes(node_coords, matrix.shape[0])
    norm = spla.norm(matrix, np.inf)
    for k, mode in enumerate(modes):
        image = np.abs(matrix @ mode).max()
        if image <= RIGID_MODE_TOLERANCE * norm * np.abs(mode).max():
            kind = ("x-translation", "y-translation", "rotation")[k]
            raise SingularSubproblemError(f"subdomain {sid.value}: floating subdomain, the {kind} is not constrained", sid.value)


def factor_subdomain(
    system: BlockSystem,
    sid: SubdomainId,
    node_coords: FloatArray | None = None,
    logger: LoggerType = None,
) -> SubdomainFactorization:
    """Factorize the constrained saddle matrix of one subdomain.

    Args:
        system: Constrained block system
        sid: Subdomain
        node_coords: Displacement node coordinates; enables the rigid-mode test
        logger: Optional logger

    Returns:
        Reusable factorization

    Raises:
        SingularSubproblemError: If the subdomain floats or the matrix is singular
    """
    sid = SubdomainId(sid)
    matrix = system.saddle(sid)
    label = f"subdomain {sid.value}"
    if node_coords is not None:
        _check_rigid_modes(matrix, node_coords, sid)
    lu = factor_matrix(matrix, label, sid)
    if logger:
        logger.debug(f"Factorized {label}: {matrix.shape[0]} unknowns, {lu.nnz} nonzeros in L+U")
    return SubdomainFactorization(subdomain=sid, matrix=matrix, layout=system.layout(sid), lu=lu)


def interface_dofs(system: BlockSystem, sid: SubdomainId) -> IntArray:
    """Free saddle positions of the displacement trace (columns touched by H)."""
    h = system.coupling(sid)
    touched = np.flatnonzero(np.asarray(abs(h).sum(axis=0)).ravel() > 0.0)
    disp = system.layout(sid).field_slice(FieldKind.DISPLACEMENT)
    return touched[(touched >= disp.start) & (touched < disp.stop)].astype(np.int64)


@dataclass(frozen=True, eq=False)
class SchurComplement:
    """S = M_BB - M_BI M_II^{-1} M_IB on the free interface trace dofs B.

    Attributes:
        boundary: Saddle positions B
        interior: Saddle positions I (everything else)
        interior_lu: Factors of M_II
        dense: S as a dense matrix
        cholesky: Cholesky factor of S
    """

    subdomain: SubdomainId
    matrix: sp.csc_matrix
    boundary: IntArray
    interior: IntArray
    interior_lu: spla.SuperLU
    dense: FloatArray
    cholesky: tuple[FloatArray, bool]

    @cached_property
    def _blocks(self) -> tuple[sp.csr_matrix, sp.csr_matrix, sp.csr_matrix]:
        m = sp.csr_matrix(self.matrix)
        return m[self.boundary][:, self.boundary], m[self.boundary][:, self.interior], m[self.interior][:, self.boundary]

    def apply(self, y: FloatArray) -> FloatArray:
        """S y with one interior solve."""
        m_bb, m_bi, m_ib = self._blocks
        return m_bb @ y - m_bi @ self.interior_lu.solve(m_ib @ y)

    def solve(self, y: FloatArray) -> FloatArray:
        """S^{-1} y."""
        return scipy.linalg.cho_solve(self.cholesky, y)

    def condense(self, rhs: FloatArray) -> FloatArray:
        """F_B - M_BI M_II^{-1} F_I."""
        _, m_bi, _ = self._blocks
        return rhs[self.boundary] - m_bi @ self.interior_lu.solve(rhs[self.interior])

    def expand(self, x_b: FloatArray, rhs: FloatArray) -> FloatArray:
        """Full saddle vector from trace values: x_I = M_II^{-1}(F_I - M_IB x_B)."""
        _, _, m_ib = self._blocks
        x = np.empty(self.matrix.shape[0])
        x[self.boundary] = x_b
        x[self.interior] = self.interior_lu.solve(rhs[self.interior] - m_ib @ x_b)
        return x


def schur_complement(system: BlockSystem, sid: SubdomainId, logger: LoggerType = None) -> SchurComplement:
    """Eliminate the interior of one subdomain onto its interface trace.

    Raises:
        SingularSubproblemError: If M_II is singular or S is not positive definite
    """
    sid = SubdomainId(sid)
    matrix = system.saddle(sid)
    boundary = interface_dofs(system, sid)
    interior = np.setdiff1d(np.arange(matrix.shape[0]), boundary).astype(np.int64)
    m = sp.csr_matrix(matrix)
    m_ii = m[interior][:, interior]
    lu = factor_matrix(m_ii, f"subdomain {sid.value} interior", sid)
    m_bb = m[boundary][:, boundary].toarray()
    m_ib = m[interior][:, boundary].toarray()
    dense = m_bb - m[boundary][:, interior] @ lu.solve(m_ib)
    dense = 0.5 * (dense + dense.T)
    try:
        chol = scipy.linalg.cho_factor(dense)
    except np.linalg.LinAlgError as e:
        raise SingularSubproblemError(f"subdomain {sid.value}: interface Schur complement is not positive definite", sid.value) from e
    if logger:
        logger.debug(f"Schur complement of subdomain {sid.value}: {boundary.size} trace dofs")
    return SchurComplement(
        subdomain=sid,
        matrix=sp.csc_matrix(matrix),
        boundary=boundary,
        interior=interior,
        interior_lu=lu,
        dense=dense,
        cholesky=chol,
    )
