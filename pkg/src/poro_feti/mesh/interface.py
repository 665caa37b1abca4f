#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Pairing of displacement trace dofs across the interface
#

"""
Interface pairing between the two subdomain displacement spaces.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core.constants import COORDINATE_TOLERANCE
from ..core.exceptions import EmptyInterfaceError, NonConformingInterfaceError
from ..core.types import BoundaryLabel, FloatArray, IntArray
from .dofs import DofMap
from .grid import Mesh

__all__ = ["InterfacePairing", "pair_interface"]


@dataclass(frozen=True, eq=False)
class InterfacePairing:
    """Displacement trace dofs sharing a coordinate on the interface.

    Attributes:
        pairs: (n_pairs, 2) rows of (first-side dof, second-side dof), ordered
            left to right and by component within a node
        edge_list: (n_edges, 2, 2) endpoints of the interface edges, left to right
    """

    pairs: IntArray
    edge_list: FloatArray

    @property
    def n_pairs(self) -> int:
        return int(self.pairs.shape[0])

    def swapped(self) -> "InterfacePairing":
        return InterfacePairing(pairs=self.pairs[:, ::-1].copy(), edge_list=self.edge_list)


def _sorted_interface_nodes(dofs: DofMap) -> IntArray:
    nodes = dofs.interface_nodes()
    return nodes[np.argsort(dofs.node_coords[nodes, 0], kind="stable")]


def pair_interface(mesh_a: Mesh, mesh_b: Mesh, dofs_a: DofMap, dofs_b: DofMap) -> InterfacePairing:
    """Pair the displacement trace dofs of two conforming subdomains.

    Args:
        mesh_a: First subdomain mesh (normally the poroelastic one)
        mesh_b: Second subdomain mesh
        dofs_a: Displacement dof map on ``mesh_a``
        dofs_b: Displacement dof map on ``mesh_b``

    Returns:
        Bijective pairing in left-to-right order

    Raises:
        EmptyInterfaceError: If either side has no interface edge
        NonConformingInterfaceError: If the trace nodes do not coincide
    """
    edges = mesh_a.edges_with_label(BoundaryLabel.INTERFACE)
    if edges.size == 0 or mesh_b.edges_with_label(BoundaryLabel.INTERFACE).size == 0:
        raise EmptyInterfaceError("cannot pair subdomains without interface edges")

    nodes_a = _sorted_interface_nodes(dofs_a)
    nodes_b = _sorted_interface_nodes(dofs_b)
    if nodes_a.size != nodes_b.size:
        raise NonConformingInterfaceError(f"interface trace node counts differ: {nodes_a.size} vs {nodes_b.size}")
    gap = np.abs(dofs_a.node_coords[nodes_a] - dofs_b.node_coords[nodes_b]).max()
    if gap > COORDINATE_TOLERANCE:
        raise NonConformingInterfaceError(f"interface nodes do not coincide (max gap {gap:.3e})")

    nc = dofs_a.n_components
    pairs = np.column_stack(
        [
            (nc * nodes_a[:, None] + np.arange(nc)).ravel(),
            (nc * nodes_b[:, None] + np.arange(nc)).ravel(),
        ]
    ).astype(np.int64)

    ends = mesh_a.vertices[mesh_a.edges[edges]]
    ends = np.sort(ends, axis=1)  # left endpoint first; the interface is horizontal
    edge_list = ends[np.argsort(ends[:, 0, 0], kind="stable")]
    return InterfacePairing(pairs=pairs, edge_list=edge_list)
