#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Lagrange P1/P2 shape functions on the reference triangle
# - P1/P2 shape functions on the reference edge
#

"""
Reference-element shape functions.

Reference triangle: (0,0), (1,0), (0,1). P2 nodes 3, 4, 5 sit on the
midpoints of local edges (0,1), (1,2), (2,0). Reference edge: s in [0, 1],
nodes ordered (start, end, midpoint).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core.constants import BARYCENTRIC_TOLERANCE
from ..core.exceptions import UnsupportedOrderError
from ..core.types import FloatArray

__all__ = ["BasisValues", "eval_basis", "eval_edge_basis", "reference_nodes", "n_basis"]

_BARY_GRADS = np.array([[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0]])
_MIDPOINT_EDGES = ((0, 1), (1, 2), (2, 0))


@dataclass(frozen=True)
class BasisValues:
    """Shape function values (nq, nb) and reference gradients (nq, nb, 2)."""

    values: FloatArray
    grads: FloatArray


def n_basis(order: int) -> int:
    if order == 1:
        return 3
    if order == 2:
        return 6
    raise UnsupportedOrderError(f"unsupported polynomial order {order}")


def reference_nodes(order: int) -> FloatArray:
    """Lagrange nodes of the reference triangle in local numbering."""
    vertices = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    if n_basis(order) == 3:
        return vertices
    mids = np.array([0.5 * (vertices[a] + vertices[b]) for a, b in _MIDPOINT_EDGES])
    return np.vstack([vertices, mids])


def eval_basis(order: int, points: FloatArray) -> BasisValues:
    """Evaluate the P1 or P2 basis at reference points.

    Args:
        order: 1 or 2
        points: (nq, 2) or (2,) reference coordinates

    Returns:
        Values and reference gradients

    Raises:
        UnsupportedOrderError: If ``order`` is not 1 or 2
        ValueError: If a point lies outside the reference triangle
    """
    n_basis(order)
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    xi, eta = pts[:, 0], pts[:, 1]
    bary = np.column_stack([1.0 - xi - eta, xi, eta])
    if np.any(bary < -BARYCENTRIC_TOLERANCE):
        raise ValueError("evaluation point outside the reference triangle")

    nq = pts.shape[0]
    if order == 1:
        values = bary
        grads = np.broadcast_to(_BARY_GRADS, (nq, 3, 2)).copy()
        return BasisValues(values=values, grads=grads)

    values = np.empty((nq, 6))
    grads = np.empty((nq, 6, 2))
    for i in range(3):
        values[:, i] = bary[:, i] * (2.0 * bary[:, i] - 1.0)
        grads[:, i, :] = (4.0 * bary[:, i] - 1.0)[:, None] * _BARY_GRADS[i]
    for k, (a, b) in enumerate(_MIDPOINT_EDGES):
        values[:, 3 + k] = 4.0 * bary[:, a] * bary[:, b]
        grads[:, 3 + k, :] = 4.0 * (bary[:, b, None] * _BARY_GRADS[a] + bary[:, a, None] * _BARY_GRADS[b])
    return BasisValues(values=values, grads=grads)


def eval_edge_basis(order: int, s: FloatArray) -> FloatArray:
    """Evaluate the 1D Lagrange basis on the reference edge, shape (ns, order + 1)."""
    n_basis(order)
    s = np.atleast_1d(np.asarray(s, dtype=np.float64))
    l0, l1 = 1.0 - s, s
    if order == 1:
        return np.column_stack([l0, l1])
    return np.column_stack([l0 * (2.0 * l0 - 1.0), l1 * (2.0 * l1 - 1.0), 4.0 * l0 * l1])
