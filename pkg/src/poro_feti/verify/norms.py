#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - L2 errors of finite element fields against closed-form functions
# - Discrete-in-time maximum over snapshots
#

"""
Error norms.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from ..core.constants import ELEMENT_QUADRATURE_DEGREE
from ..core.exceptions import DimensionMismatchError, EmptySnapshotError
from ..core.types import FloatArray, SubdomainId
from ..elements.basis import eval_basis
from ..elements.local_forms import element_geometry, quadrature_points
from ..elements.quadrature import quadrature_rule
from ..mesh.discretization import Discretization
from ..mesh.dofs import DofMap
from ..mesh.grid import Mesh
from ..model.scenarios import ExactSolution
from ..timeloop.state import StateSnapshot

__all__ = ["l2_error", "linf_l2_error", "state_errors"]

ExactField = Callable[[FloatArray, FloatArray, float], FloatArray]


def l2_error(coefficients: FloatArray, exact: ExactField, mesh: Mesh, dofmap: DofMap, t: float) -> float:
    """||field_h - exact||_{L2(mesh)} with the degree-4 element rule.

    Args:
        coefficients: Field coefficients on ``dofmap`` (interleaved for vectors)
        exact: Closed-form field, scalar or (2, ...) valued
        mesh: Mesh the field lives on
        dofmap: Numbering of the field
        t: Time at which ``exact`` is evaluated

    Returns:
        The L2 norm of the difference

    Raises:
        DimensionMismatchError: If ``coefficients`` does not match ``dofmap``
    """
    coefficients = np.asarray(coefficients, dtype=np.float64)
    if coefficients.shape != (dofmap.n_dofs,):
        raise DimensionMismatchError(f"field has shape {coefficients.shape}, expected ({dofmap.n_dofs},)")
    rule = quadrature_rule(ELEMENT_QUADRATURE_DEGREE)
    coords = mesh.triangle_coordinates()
    det = element_geometry(coords).det
    phi = eval_basis(dofmap.order, rule.points).values
    nc = dofmap.n_components
    nodal = coefficients[dofmap.cell_dofs].reshape(coords.shape[0], -1, nc)
    approx = np.einsum("qb,ebc->eqc", phi, nodal)
    pts = quadrature_points(coords, rule)
    values = np.asarray(exact(pts[..., 0], pts[..., 1], t), dtype=np.float64)
    values = np.moveaxis(values, 0, -1) if nc == 2 else values[..., None]
    sq = ((approx - values) ** 2).sum(axis=-1)
    return float(np.sqrt(np.einsum("eq,q,e->", sq, rule.weights, det)))


def state_errors(state: StateSnapshot, exact: ExactSolution, disc: Discretization) -> tuple[float, float]:
    """Displacement error over both subdomains and pressure error over the poroelastic one."""
    parts = [
        l2_error(state.displacement(sid), exact.displacement(sid), disc.subdomain(sid).mesh, disc.subdomain(sid).displacement, state.t)
        for sid in SubdomainId
    ]
    err_p = l2_error(state.p, exact.pressure, disc.poro.mesh, disc.poro.scalar, state.t)
    return float(np.hypot(*parts)), err_p


def linf_l2_error(snapshots: Sequence[StateSnapshot], error: Callable[[StateSnapshot], float]) -> float:
    """max_n error(snapshot_n) over the given snapshot times.

    Raises:
        EmptySnapshotError: If ``snapshots`` is empty
    """
    if not snapshots:
        raise EmptySnapshotError("no snapshots to take the maximum over")
    return max(error(s) for s in snapshots)
