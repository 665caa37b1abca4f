#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Initial creation for mesh module exports
#

"""
Structured meshes, dof numbering and interface pairing.
"""

from .grid import Rectangle, Mesh, TagRule, build_subdomain_mesh, tag_boundary_facets, layout_rule, check_mesh
from .dofs import FieldOrders, DofMap, build_dof_maps, build_field_map, build_multiplier_map
from .interface import InterfacePairing, pair_interface
from .discretization import SubdomainDiscretization, Discretization, build_discretization, cells_across
from .vtk import UnionMesh, union_mesh, write_vtk

__all__ = [
    "Rectangle",
    "Mesh",
    "TagRule",
    "build_subdomain_mesh",
    "tag_boundary_facets",
    "layout_rule",
    "check_mesh",
    "FieldOrders",
    "DofMap",
    "build_dof_maps",
    "build_field_map",
    "build_multiplier_map",
    "InterfacePairing",
    "pair_interface",
    "SubdomainDiscretization",
    "Discretization",
    "build_discretization",
    "cells_across",
    "UnionMesh",
    "union_mesh",
    "write_vtk",
]
