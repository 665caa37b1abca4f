#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Bundle of both subdomain meshes, their dof maps, the multiplier space and the pairing
#

"""
Two-subdomain discretization of the top-bottom coupled layout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..core.types import FieldKind, SubdomainId
from .dofs import DofMap, FieldOrders, build_dof_maps
from .grid import Mesh, Rectangle, build_subdomain_mesh, layout_rule, tag_boundary_facets
from .interface import InterfacePairing, pair_interface

__all__ = ["SubdomainDiscretization", "Discretization", "build_discretization", "cells_across"]


@dataclass(frozen=True, eq=False)
class SubdomainDiscretization:
    """Mesh and field numbering of one subdomain."""

    mesh: Mesh
    dofs: Mapping[FieldKind, DofMap]

    @property
    def subdomain(self) -> SubdomainId:
        return self.mesh.subdomain_id

    @property
    def displacement(self) -> DofMap:
        return self.dofs[FieldKind.DISPLACEMENT]

    @property
    def scalar(self) -> DofMap:
        """Numbering shared by all P1 scalar fields of the subdomain."""
        return self.dofs[FieldKind.ELASTIC_PRESSURE]

    @property
    def n_displacement(self) -> int:
        return self.displacement.n_dofs

    @property
    def n_scalar(self) -> int:
        return self.scalar.n_dofs


@dataclass(frozen=True, eq=False)
class Discretization:
    """Everything geometric and combinatorial the solver needs."""

    poro: SubdomainDiscretization
    elastic: SubdomainDiscretization
    multiplier: DofMap
    pairing: InterfacePairing
    orders: FieldOrders
    subdivisions: int

    @property
    def h(self) -> float:
        return self.poro.mesh.rect.width / self.subdivisions

    def subdomain(self, sid: SubdomainId) -> SubdomainDiscretization:
        return self.poro if sid is SubdomainId.P else self.elastic


def cells_across(rect: Rectangle, n: int) -> int:
    """Cells along y that keep the cell aspect of an ``n``-cell-wide grid."""
    return max(1, round(n * rect.height / rect.width))


def build_discretization(
    rect_p: Rectangle,
    rect_e: Rectangle,
    interface_height: float,
    n: int,
    orders: FieldOrders,
) -> Discretization:
    """Mesh both subdomains with ``n`` cells along the interface and number all fields.

    Args:
        rect_p: Poroelastic rectangle
        rect_e: Elastic rectangle
        interface_height: y coordinate of the shared segment
        n: Cells along x in both subdomains
        orders: Polynomial orders

    Returns:
        Discretization with a conforming interface pairing
    """
    rule = layout_rule(interface_height)
    mesh_p = tag_boundary_facets(build_subdomain_mesh(rect_p, n, cells_across(rect_p, n), SubdomainId.P), rule)
    mesh_e = tag_boundary_facets(build_subdomain_mesh(rect_e, n, cells_across(rect_e, n), SubdomainId.E), rule)
    dofs_p = build_dof_maps(mesh_p, orders)
    dofs_e = build_dof_maps(mesh_e, orders)
    pairing = pair_interface(mesh_p, mesh_e, dofs_p[FieldKind.DISPLACEMENT], dofs_e[FieldKind.DISPLACEMENT])
    return Discretization(
        poro=SubdomainDiscretization(mesh_p, dofs_p),
        elastic=SubdomainDiscretization(mesh_e, dofs_e),
        multiplier=dofs_p[FieldKind.MULTIPLIER],
        pairing=pairing,
        orders=orders,
        subdivisions=n,
    )
