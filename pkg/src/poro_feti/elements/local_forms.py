#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Batched element kernels (elastic, div-coupling, mass, diffusion) over all triangles
# - Element load vectors for volume forcing and gradient terms
# - Interface edge mass matrices and edge load vectors
# - Single-element wrappers local_form / local_interface returning LocalMatrix
#

"""
Local matrices of the bilinear forms.

Every kernel works on a whole batch of triangles at once: ``coords`` has shape
(n_elements, 3, 2) and results carry the element index first. Vector fields
interleave components, local index ``2 * a + c`` for basis ``a`` and
component ``c``. All maps are affine, so Jacobians are constant per element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from ..core.constants import DEGENERATE_AREA_TOLERANCE, EDGE_QUADRATURE_POINTS, ELEMENT_QUADRATURE_DEGREE
from ..core.exceptions import DegenerateElementError
from ..core.types import FloatArray, FormKind, SubdomainId
from ..mesh.dofs import FieldOrders
from .basis import eval_basis, eval_edge_basis
from .quadrature import QuadratureRule, edge_quadrature_rule, quadrature_rule

if TYPE_CHECKING:
    from ..model.params import ModelParams

__all__ = [
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


@dataclass(frozen=True)
class LocalMatrix:
    """Dense local matrix of one form on one cell."""

    form_kind: FormKind
    entries: FloatArray

    @property
    def rows(self) -> int:
        return int(self.entries.shape[0])

    @property
    def cols(self) -> int:
        return int(self.entries.shape[1])


@dataclass(frozen=True)
class ElementGeometry:
    """Affine map data per element: ``det`` (n,) and inverse-transposed Jacobian (n, 2, 2)."""

    det: FloatArray
    inv_t: FloatArray

    @property
    def areas(self) -> FloatArray:
        return 0.5 * self.det


def element_geometry(coords: FloatArray) -> ElementGeometry:
    """Jacobian data of the affine maps from the reference triangle.

    Raises:
        DegenerateElementError: If any triangle has area below the tolerance
    """
    coords = np.asarray(coords, dtype=np.float64).reshape(-1, 3, 2)
    jac = np.stack([coords[:, 1] - coords[:, 0], coords[:, 2] - coords[:, 0]], axis=2)
    det = jac[:, 0, 0] * jac[:, 1, 1] - jac[:, 0, 1] * jac[:, 1, 0]
    if np.any(0.5 * det < DEGENERATE_AREA_TOLERANCE):
        bad = int(np.argmin(det))
        raise DegenerateElementError(f"triangle {bad} has area {0.5 * det[bad]:.3e}")
    inv_t = np.empty_like(jac)
    inv_t[:, 0, 0] = jac[:, 1, 1]
    inv_t[:, 0, 1] = -jac[:, 1, 0]
    inv_t[:, 1, 0] = -jac[:, 0, 1]
    inv_t[:, 1, 1] = jac[:, 0, 0]
    inv_t /= det[:, None, None]
    return ElementGeometry(det=det, inv_t=inv_t)


def _rule(rule: QuadratureRule | None) -> QuadratureRule:
    return rule if rule is not None else quadrature_rule(ELEMENT_QUADRATURE_DEGREE)


def _physical_grads(geom: ElementGeometry, order: int, rule: QuadratureRule) -> FloatArray:
    """(n_elements, nq, nb, 2) physical basis gradients."""
    ref = eval_basis(order, rule.points).grads
    return np.einsum("eij,qbj->eqbi", geom.inv_t, ref)


def quadrature_points(coords: FloatArray, rule: QuadratureRule | None = None) -> FloatArray:
    """Physical quadrature points, shape (n_elements, nq, 2)."""
    coords = np.asarray(coords, dtype=np.float64).reshape(-1, 3, 2)
    rule = _rule(rule)
    bary = np.column_stack([1.0 - rule.points.sum(axis=1), rule.points])
    return np.einsum("qk,ekd->eqd", bary, coords)


def elastic_matrices(coords: FloatArray, order: int, mu: float, rule: QuadratureRule | None = None) -> FloatArray:
    """2 mu (eps(phi_i), eps(phi_j)) for vector basis functions, shape (n, 2nb, 2nb)."""
    rule = _rule(rule)
    geom = element_geometry(coords)
    grads = _physical_grads(geom, order, rule)
    wdet = geom.det[:, None] * rule.weights[None, :]
    nb = grads.shape[2]
    # delta_cd grad(a).grad(b) + d_d(a) d_c(b)
    lap = np.einsum("eq,eqai,eqbi->eab", wdet, grads, grads)
    cross = np.einsum("eq,eqad,eqbc->eacbd", wdet, grads, grads)
    local = cross.copy()
    for c in range(2):
        local[:, :, c, :, c] += lap
    return mu * local.reshape(-1, 2 * nb, 2 * nb)


def div_coupling_matrices(
    coords: FloatArray,
    displacement_order: int,
    scalar_order: int,
    rule: QuadratureRule | None = None,
) -> FloatArray:
    """-(psi_i, div phi_j), shape (n, n_scalar, 2nb)."""
    rule = _rule(rule)
    geom = element_geometry(coords)
    grads = _physical_grads(geom, displacement_order, rule)
    psi = eval_basis(scalar_order, rule.points).values
    wdet = geom.det[:, None] * rule.weights[None, :]
    local = -np.einsum("eq,qi,eqbd->eibd", wdet, psi, grads)
    return local.reshape(local.shape[0], psi.shape[1], -1)


def mass_matrices(coords: FloatArray, order: int, rule: QuadratureRule | None = None) -> FloatArray:
    """(psi_i, psi_j), shape (n, nb, nb)."""
    rule = _rule(rule)
    geom = element_geometry(coords)
    psi = eval_basis(order, rule.points).values
    return np.einsum("e,q,qa,qb->eab", geom.det, rule.weights, psi, psi)


def diffusion_matrices(
    coords: FloatArray,
    order: int,
    permeability: FloatArray,
    viscosity: float,
    rule: QuadratureRule | None = None,
) -> FloatArray:
    """(1/mu_f) (K grad psi_i, grad psi_j), shape (n, nb, nb)."""
    rule = _rule(rule)
    geom = element_geometry(coords)
    grads = _physical_grads(geom, order, rule)
    wdet = geom.det[:, None] * rule.weights[None, :]
    k = np.asarray(permeability, dtype=np.float64)
    return np.einsum("eq,ij,eqaj,eqbi->eab", wdet, k, grads, grads) / viscosity


def element_matrices(
    form_kind: FormKind,
    coords: FloatArray,
    params: ModelParams,
    orders: FieldOrders,
    subdomain: SubdomainId = SubdomainId.P,
) -> FloatArray:
    """Dispatch one volume form over a batch of triangles.

    Args:
        form_kind: Elastic, div-coupling, mass (scalar order) or diffusion
        coords: (n, 3, 2) triangle vertices
        params: Physical parameters
        orders: Polynomial orders
        subdomain: Selects the Lame constants of the elastic form

    Returns:
        Batched local matrices

    Raises:
        ValueError: For the interface form, which lives on edges
    """
    if form_kind is FormKind.ELASTIC:
        return elastic_matrices(coords, orders.displacement, params.lame(subdomain)[1])
    if form_kind is FormKind.DIV_COUPLING:
        return div_coupling_matrices(coords, orders.displacement, orders.scalar)
    if form_kind is FormKind.MASS:
        return mass_matrices(coords, orders.scalar)
    if form_kind is FormKind.DIFFUSION:
        return diffusion_matrices(coords, orders.scalar, params.K, params.mu_f)
    raise ValueError(f"{form_kind.value} is not a volume form")


def scalar_load_vectors(coords: FloatArray, order: int, values: FloatArray, rule: QuadratureRule | None = None) -> FloatArray:
    """(f, psi_i) with f given at the quadrature points (n, nq); shape (n, nb)."""
    rule = _rule(rule)
    geom = element_geometry(coords)
    psi = eval_basis(order, rule.points).values
    return np.einsum("e,q,eq,qa->ea", geom.det, rule.weights, values, psi)


def vector_load_vectors(coords: FloatArray, order: int, values: FloatArray, rule: QuadratureRule | None = None) -> FloatArray:
    """(f, phi_i) with f given at the quadrature points (n, nq, 2); interleaved shape (n, 2nb)."""
    rule = _rule(rule)
    geom = element_geometry(coords)
    psi = eval_basis(order, rule.points).values
    local = np.einsum("e,q,eqc,qa->eac", geom.det, rule.weights, values, psi)
    return local.reshape(local.shape[0], -1)


def gradient_load_vectors(coords: FloatArray, order: int, vector: FloatArray, rule: QuadratureRule | None = None) -> FloatArray:
    """(w, grad psi_i) for a constant vector ``w``; shape (n, nb)."""
    rule = _rule(rule)
    geom = element_geometry(coords)
    grads = _physical_grads(geom, order, rule)
    w = np.asarray(vector, dtype=np.float64)
    return np.einsum("e,q,eqai,i->ea", geom.det, rule.weights, grads, w)


def edge_lengths(ends: FloatArray) -> FloatArray:
    """Lengths of (n, 2, 2) edges.

    Raises:
        DegenerateElementError: If an edge has zero length
    """
    ends = np.asarray(ends, dtype=np.float64).reshape(-1, 2, 2)
    lengths = np.linalg.norm(ends[:, 1] - ends[:, 0], axis=1)
    if np.any(lengths <= 0.0):
        raise DegenerateElementError("interface edge of zero length")
    return lengths


def edge_quadrature_points(ends: FloatArray, rule: QuadratureRule | None = None) -> FloatArray:
    """Physical Gauss points on (n, 2, 2) edges, shape (n, nq, 2)."""
    ends = np.asarray(ends, dtype=np.float64).reshape(-1, 2, 2)
    rule = rule if rule is not None else edge_quadrature_rule(EDGE_QUADRATURE_POINTS)
    s = rule.points
    return ends[:, None, 0, :] * (1.0 - s)[None, :, None] + ends[:, None, 1, :] * s[None, :, None]


def interface_edge_matrices(
    ends: FloatArray,
    trace_order: int,
    multiplier_order: int = 1,
    rule: QuadratureRule | None = None,
) -> FloatArray:
    """Per-component edge mass <upsilon_i, theta_j>, shape (n, trace nodes, multiplier nodes)."""
    rule = rule if rule is not None else edge_quadrature_rule(EDGE_QUADRATURE_POINTS)
    lengths = edge_lengths(ends)
    trace = eval_edge_basis(trace_order, rule.points)
    mult = eval_edge_basis(multiplier_order, rule.points)
    return np.einsum("e,q,qi,qj->eij", lengths, rule.weights, trace, mult)


def edge_load_vectors(ends: FloatArray, order: int, values: FloatArray, rule: QuadratureRule | None = None) -> FloatArray:
    """<g, upsilon_i> on edges.

    Args:
        ends: (n, 2, 2) edge endpoints, in the node order of the trace basis
        order: Trace order
        values: (n, nq) scalar or (n, nq, k) vector data at the edge Gauss points

    Returns:
        (n, order + 1) or interleaved (n, (order + 1) * k)
    """
    rule = rule if rule is not None else edge_quadrature_rule(EDGE_QUADRATURE_POINTS)
    lengths = edge_lengths(ends)
    basis = eval_edge_basis(order, rule.points)
    values = np.asarray(values, dtype=np.float64)
    if values.ndim == 2:
        return np.einsum("e,q,eq,qa->ea", lengths, rule.weights, values, basis)
    local = np.einsum("e,q,eqc,qa->eac", lengths, rule.weights, values, basis)
    return local.reshape(local.shape[0], -1)


def local_form(
    form_kind: FormKind,
    triangle: FloatArray,
    params: ModelParams,
    orders: FieldOrders | None = None,
    subdomain: SubdomainId = SubdomainId.P,
) -> LocalMatrix:
    """Local matrix of one volume form on a single triangle.

    Raises:
        DegenerateElementError: If the triangle area is below tolerance
    """
    orders = orders if orders is not None else FieldOrders()
    coords = np.asarray(triangle, dtype=np.float64).reshape(1, 3, 2)
    return LocalMatrix(form_kind=form_kind, entries=element_matrices(form_kind, coords, params, orders, subdomain)[0])


def local_interface(edge: FloatArray, trace_order: int, multiplier_order: int = 1) -> LocalMatrix:
    """Per-component interface matrix on one edge.

    Raises:
        DegenerateElementError: If the edge has zero length
    """
    ends = np.asarray(edge, dtype=np.float64).reshape(1, 2, 2)
    return LocalMatrix(form_kind=FormKind.INTERFACE, entries=interface_edge_matrices(ends, trace_order, multiplier_order)[0])
