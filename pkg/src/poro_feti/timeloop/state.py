#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - StateSnapshot holding every discrete field at one time level
# - Initial data: nodal interpolants of u_0 and p_0, L2-projected divergence for eta_0 and xi_0
#

"""
Discrete state of the coupled problem at one time level.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from ..core.exceptions import DimensionMismatchError, MissingBoundaryDataError
from ..core.types import FieldKind, FloatArray, ScalarField, SubdomainId, VectorField
from ..assembly.blocks import BlockSystem, SubdomainBlocks, assemble_block_system
from ..mesh.discretization import Discretization
from ..mesh.dofs import DofMap
from ..model.params import reformulate
from ..model.scenarios import Scenario

__all__ = ["StateSnapshot", "project_initial", "projected_divergence", "interpolate_vector", "interpolate_scalar"]


@dataclass(frozen=True, eq=False)
class StateSnapshot:
    """Coefficient vectors of all unknowns at t_n.

    Displacements are interleaved (x, y) per node; scalar fields share the P1
    numbering of their subdomain; ``lam`` lives on the kept multiplier dofs.
    """

    n: int
    t: float
    u_P: FloatArray
    xi_P: FloatArray
    eta: FloatArray
    p: FloatArray
    u_E: FloatArray
    xi_E: FloatArray
    lam: FloatArray

    def displacement(self, sid: SubdomainId) -> FloatArray:
        return self.u_P if SubdomainId(sid) is SubdomainId.P else self.u_E

    def saddle_vector(self, system: BlockSystem, sid: SubdomainId) -> FloatArray:
        """Pack the fields of ``sid`` into its saddle layout."""
        layout = system.layout(sid)
        x = np.empty(layout.size)
        if SubdomainId(sid) is SubdomainId.P:
            parts = {
                FieldKind.DISPLACEMENT: self.u_P,
                FieldKind.FLUID_CONTENT: self.eta,
                FieldKind.ELASTIC_PRESSURE: self.xi_P,
                FieldKind.FLUID_PRESSURE: self.p,
            }
        else:
            parts = {FieldKind.DISPLACEMENT: self.u_E, FieldKind.ELASTIC_PRESSURE: self.xi_E}
        for kind, values in parts.items():
            x[layout.field_slice(kind)] = values
        return x

    @classmethod
    def from_saddle(
        cls,
        system: BlockSystem,
        solution: Mapping[SubdomainId, FloatArray],
        lam: FloatArray,
        n: int,
        t: float,
    ) -> "StateSnapshot":
        """Unpack per-subdomain saddle vectors."""
        fp = system.layout(SubdomainId.P).split(solution[SubdomainId.P])
        fe = system.layout(SubdomainId.E).split(solution[SubdomainId.E])
        return cls(
            n=n,
            t=t,
            u_P=fp[FieldKind.DISPLACEMENT].copy(),
            xi_P=fp[FieldKind.ELASTIC_PRESSURE].copy(),
            eta=fp[FieldKind.FLUID_CONTENT].copy(),
            p=fp[FieldKind.FLUID_PRESSURE].copy(),
            u_E=fe[FieldKind.DISPLACEMENT].copy(),
            xi_E=fe[FieldKind.ELASTIC_PRESSURE].copy(),
            lam=np.asarray(lam, dtype=np.float64).copy(),
        )


def interpolate_vector(dofmap: DofMap, fn: VectorField, t: float) -> FloatArray:
    """Nodal interpolant of a vector field on interleaved dofs."""
    xy = dofmap.node_coords
    values = np.asarray(fn(xy[:, 0], xy[:, 1], t), dtype=np.float64)
    if values.shape != (2, dofmap.n_nodes):
        raise DimensionMismatchError(f"vector field returned shape {values.shape}, expected (2, {dofmap.n_nodes})")
    return values.T.reshape(-1).copy()


def interpolate_scalar(dofmap: DofMap, fn: ScalarField, t: float) -> FloatArray:
    xy = dofmap.node_coords
    return np.broadcast_to(np.asarray(fn(xy[:, 0], xy[:, 1], t), dtype=np.float64), (dofmap.n_nodes,)).copy()


def projected_divergence(blocks: SubdomainBlocks, u: FloatArray) -> FloatArray:
    """L2 projection of div u_h onto the scalar space: R d = -B u."""
    return np.asarray(spla.spsolve(sp.csc_matrix(blocks.R), -(blocks.B @ u)), dtype=np.float64)


def project_initial(
    scenario: Scenario,
    disc: Discretization,
    n_multipliers: int = 0,
    system: BlockSystem | None = None,
) -> StateSnapshot:
    """Snapshot at n = 0 from the initial data.

    Displacements and the fluid pressure are nodal interpolants. The
    divergence d_h of the interpolated displacement is the L2 projection
    R d_h = -B u_0,h, so eta_0 = c0 p_0 + alpha d_h, xi_P,0 = alpha p_0 -
    lambda_P d_h and xi_E,0 = -lambda_E d_h satisfy the discrete constitutive
    rows exactly. The multiplier starts at zero.

    Args:
        scenario: Problem data
        disc: Discretization
        n_multipliers: Length of the multiplier vector
        system: Assembled blocks of ``disc``; assembled here when omitted

    Raises:
        MissingBoundaryDataError: If the scenario has no initial data
    """
    init = scenario.initial
    if init is None:
        raise MissingBoundaryDataError(f"scenario {scenario.name.value} has no initial data")
    params = scenario.params
    if system is None:
        system = assemble_block_system(disc, params, scenario.time_step)
    u_p = interpolate_vector(disc.poro.displacement, init.displacement_p, 0.0)
    u_e = interpolate_vector(disc.elastic.displacement, init.displacement_e, 0.0)
    p0 = interpolate_scalar(disc.poro.scalar, init.pressure, 0.0)
    xi_p, eta = reformulate(params, p0, projected_divergence(system.poro, u_p))
    return StateSnapshot(
        n=0,
        t=0.0,
        u_P=u_p,
        xi_P=xi_p,
        eta=eta,
        p=p0,
        u_E=u_e,
        xi_E=-params.lambda_E * projected_divergence(system.elastic, u_e),
        lam=np.zeros(n_multipliers),
    )
