#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Initial creation for elements module exports
#

"""
Reference shape functions, quadrature and local matrices.
"""

from .basis import BasisValues, eval_basis, eval_edge_basis, reference_nodes, n_basis
from .quadrature import QuadratureRule, quadrature_rule, edge_quadrature_rule
from .local_forms import (
    LocalMatrix,
    ElementGeometry,
    element_geometry,
    quadrature_points,
    elastic_matrices,
    div_coupling_matrices,
    mass_matrices,
    diffusion_matrices,
    element_matrices,
    scalar_load_vectors,
    vector_load_vectors,
    gradient_load_vectors,
    edge_quadrature_points,
    edge_lengths,
    interface_edge_matrices,
    edge_load_vectors,
    local_form,
    local_interface,
)

__all__ = [
    # Basis
    "BasisValues",
    "eval_basis",
    "eval_edge_basis",
    "reference_nodes",
    "n_basis",
    # Quadrature
    "QuadratureRule",
    "quadrature_rule",
    "edge_quadrature_rule",
    # Local forms
    "LocalMatrix",
    "ElementGeometry",
    "element_geometry",
    "quadrature_points",
    "elastic_matrices",
    "div_coupling_matrices",
    "mass_matrices",
    "diffusion_matrices",
    "element_matrices",
    "scalar_load_vectors",
    "vector_load_vectors",
    "gradient_load_vectors",
    "edge_quadrature_points",
    "edge_lengths",
    "interface_edge_matrices",
    "edge_load_vectors",
    "local_form",
    "local_interface",
]
