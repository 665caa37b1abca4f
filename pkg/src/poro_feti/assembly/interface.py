#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Interface coupling matrices H_P and H_E (multiplier rows, trace columns)
# - Multiplier node to poroelastic trace node lookup
#

"""
Interface coupling <theta, upsilon>_Gamma between displacement traces and the
vector multiplier.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from ..core.constants import COORDINATE_TOLERANCE
from ..core.exceptions import EmptyInterfaceError, NonConformingInterfaceError
from ..core.types import BoundaryLabel, IntArray
from ..elements.local_forms import interface_edge_matrices
from ..mesh.discretization import Discretization

__all__ = ["assemble_interface", "multiplier_trace_nodes"]


def _vertex_to_multiplier(disc: Discretization, vertices: IntArray) -> IntArray:
    xs = disc.multiplier.node_coords[:, 0]
    vx = disc.poro.mesh.vertices[vertices, 0]
    idx = np.clip(np.searchsorted(xs, vx), 0, xs.size - 1)
    # searchsorted may land one past a node sitting just below vx
    left = np.clip(idx - 1, 0, xs.size - 1)
    idx = np.where(np.abs(xs[left] - vx) < np.abs(xs[idx] - vx), left, idx)
    if np.any(np.abs(xs[idx] - vx) > COORDINATE_TOLERANCE):
        raise NonConformingInterfaceError("interface vertex without a multiplier node")
    return idx.astype(np.int64)


def multiplier_trace_nodes(disc: Discretization) -> IntArray:
    """Poroelastic displacement node under every multiplier node."""
    mesh = disc.poro.mesh
    trace = disc.poro.displacement.interface_nodes()
    trace = trace[trace < mesh.n_vertices]
    order = _vertex_to_multiplier(disc, trace)
    nodes = np.empty(disc.multiplier.n_nodes, dtype=np.int64)
    nodes[order] = trace
    return nodes


def assemble_interface(disc: Discretization) -> tuple[sp.csr_matrix, sp.csr_matrix]:
    """Assemble H_P and H_E.

    [H_D]_{ij} = <theta_j, upsilon_i>_Gamma, one row per multiplier dof and one
    column per displacement dof of subdomain D. Both sides share the same edge
    mass matrices, so H_E is H_P with its columns carried over by the pairing.

    Args:
        disc: Two-subdomain discretization with a conforming pairing

    Returns:
        Tuple (H_P, H_E) in CSR format

    Raises:
        EmptyInterfaceError: If the poroelastic mesh has no interface edge
    """
    mesh = disc.poro.mesh
    disp = disc.poro.displacement
    edges = mesh.edges_with_label(BoundaryLabel.INTERFACE)
    if edges.size == 0:
        raise EmptyInterfaceError("no interface edges to couple")

    ends_v = mesh.edges[edges]
    ends = mesh.vertices[ends_v]
    if disp.order == 1:
        trace_nodes = ends_v
    else:
        trace_nodes = np.column_stack([ends_v, mesh.n_vertices + edges])
    mult_nodes = _vertex_to_multiplier(disc, ends_v.ravel()).reshape(-1, 2)

    local = interface_edge_matrices(ends, disp.order, disc.multiplier.order)
    rows, cols, vals = [], [], []
    for c in range(2):
        r = np.broadcast_to((2 * mult_nodes + c)[:, None, :], local.shape)
        k = np.broadcast_to((2 * trace_nodes + c)[:, :, None], local.shape)
        rows.append(r.ravel())
        cols.append(k.ravel())
        vals.append(local.ravel())

    shape = (disc.multiplier.n_dofs, disp.n_dofs)
    h_p = sp.coo_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=shape).tocsr()

    pairs = disc.pairing.pairs
    carry = sp.coo_matrix(
        (np.ones(pairs.shape[0]), (pairs[:, 0], pairs[:, 1])),
        shape=(disp.n_dofs, disc.elastic.n_displacement),
    ).tocsr()
    h_e = (h_p @ carry).tocsr()
    return h_p, h_e
