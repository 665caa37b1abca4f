#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Lagrange dof numbering for P1/P2 scalar and vector fields
# - Interface masks and per-label boundary node sets
# - Multiplier space on the interface edge mesh
#

"""
Degree-of-freedom maps.

Nodes of a P1 field are the mesh vertices. P2 adds one node per edge midpoint,
numbered ``n_vertices + edge_index``. Vector fields interleave components,
``dof = n_components * node + component``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
import numpy.typing as npt

from ..core.constants import SUPPORTED_DISPLACEMENT_ORDERS, SUPPORTED_SCALAR_ORDERS
from ..core.exceptions import EmptyInterfaceError, UnsupportedOrderError
from ..core.types import BoundaryLabel, FieldKind, FloatArray, IntArray, SubdomainId
from .grid import Mesh

__all__ = [
    "FieldOrders",
    "DofMap",
    "build_dof_maps",
    "build_field_map",
    "build_multiplier_map",
]


@dataclass(frozen=True)
class FieldOrders:
    """Polynomial orders: ``displacement`` (k) and the scalar fields (l)."""

    displacement: int = 2
    scalar: int = 1

    def __post_init__(self) -> None:
        if self.displacement not in SUPPORTED_DISPLACEMENT_ORDERS:
            raise UnsupportedOrderError(f"displacement order must be one of {SUPPORTED_DISPLACEMENT_ORDERS}, got {self.displacement}")
        if self.scalar not in SUPPORTED_SCALAR_ORDERS:
            raise UnsupportedOrderError(f"scalar order must be one of {SUPPORTED_SCALAR_ORDERS}, got {self.scalar}")


@dataclass(frozen=True, eq=False)
class DofMap:
    """Numbering of one discrete field.

    Attributes:
        field_kind: Which field this map numbers
        order: Polynomial order (1 or 2)
        n_components: 2 for vector fields, 1 for scalars
        node_coords: (n_nodes, 2) coordinates of the Lagrange nodes
        cell_nodes: (n_cells, nodes_per_cell) node indices per cell (triangle or interface edge)
        interface_mask: flag per dof, True where the node lies on the interface
        boundary_nodes: label -> sorted node indices on edges with that label
    """

    field_kind: FieldKind
    order: int
    n_components: int
    node_coords: FloatArray
    cell_nodes: IntArray
    interface_mask: npt.NDArray[np.bool_] = field(repr=False)
    boundary_nodes: Mapping[BoundaryLabel, IntArray] = field(default_factory=dict, repr=False)

    @property
    def n_nodes(self) -> int:
        return int(self.node_coords.shape[0])

    @property
    def n_dofs(self) -> int:
        return self.n_nodes * self.n_components

    @property
    def global_indices(self) -> IntArray:
        return np.arange(self.n_dofs, dtype=np.int64)

    @property
    def cell_dofs(self) -> IntArray:
        """(n_cells, nodes_per_cell * n_components) dofs per cell, interleaved."""
        nc = self.n_components
        dofs = nc * self.cell_nodes[:, :, None] + np.arange(nc)[None, None, :]
        return dofs.reshape(self.cell_nodes.shape[0], -1)

    def node_dofs(self, nodes: IntArray, component: int) -> IntArray:
        return self.n_components * np.asarray(nodes, dtype=np.int64) + component

    def interface_nodes(self) -> IntArray:
        return np.flatnonzero(self.interface_mask[:: self.n_components]).astype(np.int64)


def _edge_nodes(mesh: Mesh, order: int) -> IntArray:
    """Nodes of each mesh edge: (v0, v1) for P1, (v0, v1, midpoint) for P2."""
    if order == 1:
        return mesh.edges
    mid = mesh.n_vertices + np.arange(mesh.n_edges, dtype=np.int64)
    return np.column_stack([mesh.edges, mid])


def build_field_map(mesh: Mesh, field_kind: FieldKind, order: int, n_components: int) -> DofMap:
    """Number one Lagrange field on ``mesh``.

    Args:
        mesh: Tagged mesh
        field_kind: Field being numbered
        order: 1 or 2
        n_components: Components per node

    Returns:
        DofMap for the field

    Raises:
        UnsupportedOrderError: If ``order`` is not 1 or 2
    """
    if order not in (1, 2):
        raise UnsupportedOrderError(f"unsupported polynomial order {order}")

    if order == 1:
        node_coords = mesh.vertices.copy()
        cell_nodes = mesh.triangles.copy()
    else:
        node_coords = np.vstack([mesh.vertices, mesh.edge_midpoints()])
        mids = mesh.n_vertices + mesh.triangle_edges
        cell_nodes = np.hstack([mesh.triangles, mids])

    edge_nodes = _edge_nodes(mesh, order)
    boundary_nodes: dict[BoundaryLabel, IntArray] = {}
    for label in BoundaryLabel:
        edges = mesh.edges_with_label(label)
        if edges.size:
            boundary_nodes[label] = np.unique(edge_nodes[edges].ravel())

    node_mask = np.zeros(node_coords.shape[0], dtype=bool)
    if BoundaryLabel.INTERFACE in boundary_nodes:
        node_mask[boundary_nodes[BoundaryLabel.INTERFACE]] = True

    return DofMap(
        field_kind=field_kind,
        order=order,
        n_components=n_components,
        node_coords=node_coords,
        cell_nodes=cell_nodes.astype(np.int64),
        interface_mask=np.repeat(node_mask, n_components),
        boundary_nodes=boundary_nodes,
    )


def build_multiplier_map(mesh: Mesh) -> DofMap:
    """Continuous P1 vector multiplier space on the interface edges of ``mesh``.

    Nodes are the interface vertices sorted left to right; cells are the
    interface edges.

    Raises:
        EmptyInterfaceError: If the mesh has no interface edge
    """
    edges = mesh.edges_with_label(BoundaryLabel.INTERFACE)
    if edges.size == 0:
        raise EmptyInterfaceError(f"subdomain {mesh.subdomain_id.value} has no interface edges")
    vertices = np.unique(mesh.edges[edges].ravel())
    vertices = vertices[np.argsort(mesh.vertices[vertices, 0], kind="stable")]
    local = {int(v): k for k, v in enumerate(vertices)}
    cells = np.array([[local[int(a)], local[int(b)]] for a, b in mesh.edges[edges]], dtype=np.int64)
    cells.sort(axis=1)
    cells = cells[np.argsort(cells[:, 0], kind="stable")]
    return DofMap(
        field_kind=FieldKind.MULTIPLIER,
        order=1,
        n_components=2,
        node_coords=mesh.vertices[vertices].copy(),
        cell_nodes=cells,
        interface_mask=np.ones(2 * vertices.size, dtype=bool),
    )


def build_dof_maps(mesh: Mesh, orders: FieldOrders) -> dict[FieldKind, DofMap]:
    """Build the dof maps of every field living on ``mesh``.

    The poroelastic subdomain carries displacement, elastic pressure, fluid
    content, fluid pressure and the interface multiplier; the elastic
    subdomain carries displacement and elastic pressure.

    Args:
        mesh: Tagged subdomain mesh
        orders: Polynomial orders

    Returns:
        Mapping field kind -> DofMap
    """
    maps = {
        FieldKind.DISPLACEMENT: build_field_map(mesh, FieldKind.DISPLACEMENT, orders.displacement, 2),
        FieldKind.ELASTIC_PRESSURE: build_field_map(mesh, FieldKind.ELASTIC_PRESSURE, orders.scalar, 1),
    }
    if mesh.subdomain_id is SubdomainId.P:
        maps[FieldKind.FLUID_CONTENT] = build_field_map(mesh, FieldKind.FLUID_CONTENT, orders.scalar, 1)
        maps[FieldKind.FLUID_PRESSURE] = build_field_map(mesh, FieldKind.FLUID_PRESSURE, orders.scalar, 1)
        if mesh.edges_with_label(BoundaryLabel.INTERFACE).size:
            maps[FieldKind.MULTIPLIER] = build_multiplier_map(mesh)
    return maps
