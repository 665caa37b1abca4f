#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Body force, traction, source, flux and gravity load vectors
# - Per-step saddle right-hand sides with the backward Euler mass-balance row
#

"""
Load vectors of one time step.

F_D  = (f_D, phi) + <t_D, phi> over traction segments
Z    = (z, psi) + <z_w, psi> over flux segments + (rho_f/mu_f)(K g, grad psi)

The saddle right-hand sides are b_P = [F_P, 0, 0, -R_P eta_prev - tau Z] and
b_E = [F_E, 0].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core.constants import EDGE_QUADRATURE_POINTS
from ..core.exceptions import DimensionMismatchError
from ..core.types import BoundaryKind, BoundaryLabel, FieldKind, FloatArray, IntArray, SubdomainId
from ..elements.local_forms import (
    edge_load_vectors,
    edge_quadrature_points,
    gradient_load_vectors,
    quadrature_points,
    scalar_load_vectors,
    vector_load_vectors,
)
from ..elements.quadrature import edge_quadrature_rule
from ..mesh.discretization import Discretization, SubdomainDiscretization
from ..mesh.dofs import DofMap
from ..model.scenarios import BoundaryField, Scenario
from .blocks import BlockSystem

__all__ = ["StepLoads", "assemble_rhs_step", "saddle_rhs", "body_load", "source_load"]


@dataclass(frozen=True, eq=False)
class StepLoads:
    """Load vectors at t_n and the mass-balance row -R_P eta_prev - tau Z."""

    t: float
    F_P: FloatArray
    F_E: FloatArray
    Z: FloatArray
    mass_balance: FloatArray

    def force(self, sid: SubdomainId) -> FloatArray:
        return self.F_P if SubdomainId(sid) is SubdomainId.P else self.F_E


def _scatter(n: int, dofs: IntArray, local: FloatArray) -> FloatArray:
    return np.bincount(dofs.ravel(), weights=local.ravel(), minlength=n)


def _edge_dofs(sub: SubdomainDiscretization, dofmap: DofMap, edges: IntArray) -> tuple[FloatArray, IntArray]:
    """Edge endpoints and trace dofs (end0, end1[, mid]) of ``dofmap`` on ``edges``."""
    mesh = sub.mesh
    ends_v = mesh.edges[edges]
    nodes = ends_v if dofmap.order == 1 else np.column_stack([ends_v, mesh.n_vertices + edges])
    nc = dofmap.n_components
    dofs = (nc * nodes[:, :, None] + np.arange(nc)).reshape(nodes.shape[0], -1)
    return mesh.vertices[ends_v], dofs


def _boundary_load(
    sub: SubdomainDiscretization,
    dofmap: DofMap,
    label: BoundaryLabel,
    data: BoundaryField,
    t: float,
) -> FloatArray:
    edges = sub.mesh.edges_with_label(label)
    if edges.size == 0:
        return np.zeros(dofmap.n_dofs)
    rule = edge_quadrature_rule(EDGE_QUADRATURE_POINTS)
    ends, dofs = _edge_dofs(sub, dofmap, edges)
    pts = edge_quadrature_points(ends, rule)
    values = np.asarray(data(label, pts[..., 0], pts[..., 1], t), dtype=np.float64)
    if dofmap.n_components == 2:
        values = np.moveaxis(values, 0, -1)
    return _scatter(dofmap.n_dofs, dofs, edge_load_vectors(ends, dofmap.order, values, rule))


def body_load(scenario: Scenario, sub: SubdomainDiscretization, t: float) -> FloatArray:
    """F_D: body force plus tractions on segments with a traction component."""
    data = scenario.subdomain(sub.subdomain)
    disp = sub.displacement
    coords = sub.mesh.triangle_coordinates()
    pts = quadrature_points(coords)
    f = np.moveaxis(np.asarray(data.body_force(pts[..., 0], pts[..., 1], t), dtype=np.float64), 0, -1)
    load = _scatter(disp.n_dofs, disp.cell_dofs, vector_load_vectors(coords, disp.order, f))
    for label in BoundaryLabel:
        if label is BoundaryLabel.INTERFACE or label not in disp.boundary_nodes:
            continue
        if scenario.condition(sub.subdomain, label).has_traction():
            load += _boundary_load(sub, disp, label, data.traction, t)
    return load


def source_load(scenario: Scenario, disc: Discretization, t: float) -> FloatArray:
    """Z: volume source, boundary flux and the gravity term."""
    sub = disc.poro
    scalar = sub.dofs[FieldKind.FLUID_PRESSURE]
    coords = sub.mesh.triangle_coordinates()
    pts = quadrature_points(coords)
    z = np.asarray(scenario.source(pts[..., 0], pts[..., 1], t), dtype=np.float64)
    load = _scatter(scalar.n_dofs, scalar.cell_dofs, scalar_load_vectors(coords, scalar.order, z))
    for label in BoundaryLabel:
        if label not in scalar.boundary_nodes:
            continue
        if scenario.condition(SubdomainId.P, label).pressure is BoundaryKind.FLUX:
            load += _boundary_load(sub, scalar, label, scenario.flux_bc, t)
    params = scenario.params
    if params.rho_f != 0.0 and np.any(params.gravity):
        w = (params.rho_f / params.mu_f) * (params.K @ params.gravity)
        load += _scatter(scalar.n_dofs, scalar.cell_dofs, gradient_load_vectors(coords, scalar.order, w))
    return load


def assemble_rhs_step(
    scenario: Scenario,
    disc: Discretization,
    system: BlockSystem,
    t_n: float,
    eta_prev: FloatArray,
    tau: float | None = None,
) -> StepLoads:
    """Assemble the load vectors of step t_n.

    Args:
        scenario: Forcing and boundary data
        disc: Discretization
        system: Assembled blocks (for R_P)
        t_n: Time level
        eta_prev: Fluid content of the previous step
        tau: Time step, defaults to ``system.tau``

    Returns:
        StepLoads with the mass-balance row -R_P eta_prev - tau Z

    Raises:
        DimensionMismatchError: If ``eta_prev`` has the wrong length
        MissingBoundaryDataError: If the scenario misses a segment condition
    """
    tau = system.tau if tau is None else tau
    eta_prev = np.asarray(eta_prev, dtype=np.float64)
    if eta_prev.shape != (system.poro.n_scalar,):
        raise DimensionMismatchError(f"eta_prev has shape {eta_prev.shape}, expected ({system.poro.n_scalar},)")
    Z = source_load(scenario, disc, t_n)
    return StepLoads(
        t=t_n,
        F_P=body_load(scenario, disc.poro, t_n),
        F_E=body_load(scenario, disc.elastic, t_n),
        Z=Z,
        mass_balance=-(system.poro.R @ eta_prev) - tau * Z,
    )


def saddle_rhs(system: BlockSystem, loads: StepLoads, sid: SubdomainId) -> FloatArray:
    """Unconstrained saddle right-hand side of one subdomain."""
    layout = system.layout(sid)
    b = np.zeros(layout.size)
    b[layout.field_slice(FieldKind.DISPLACEMENT)] = loads.force(sid)
    if SubdomainId(sid) is SubdomainId.P:
        b[layout.field_slice(FieldKind.FLUID_PRESSURE)] = loads.mass_balance
    return b
