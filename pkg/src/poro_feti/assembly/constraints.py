#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Dirichlet constraint sets built from scenario boundary conditions
# - Symmetric elimination via BlockSystem and right-hand-side lifting
# - Multiplier components dropped where the poroelastic trace is prescribed
#

"""
Dirichlet constraints.

A ConstraintSet lists field-local dof indices with prescribed values at one
time level. The indices never change between steps, so the constrained
matrices are built once; only the lifted right-hand sides follow the values.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from ..core.exceptions import ConstraintError
from ..core.types import BoundaryKind, BoundaryLabel, FieldKind, FloatArray, IntArray, SubdomainId
from ..mesh.discretization import Discretization
from ..model.scenarios import Scenario
from .blocks import BlockSystem, SaddleLayout
from .interface import multiplier_trace_nodes

__all__ = [
    "FieldConstraint",
    "ConstraintSet",
    "build_constraints",
    "apply_constraints",
    "constrain_rhs",
    "prescribed_vector",
]


@dataclass(frozen=True, eq=False)
class FieldConstraint:
    """Prescribed values on field-local dof indices."""

    indices: IntArray
    values: FloatArray

    def __post_init__(self) -> None:
        if self.indices.shape != self.values.shape:
            raise ConstraintError("constraint indices and values differ in length")


@dataclass(frozen=True, eq=False)
class ConstraintSet:
    """Dirichlet data of both subdomains at time ``time``.

    Attributes:
        entries: (subdomain, field) -> prescribed dofs
        dropped_multipliers: Multiplier dofs removed from the interface space
        time: Time level of the values
    """

    entries: Mapping[tuple[SubdomainId, FieldKind], FieldConstraint] = field(default_factory=dict)
    dropped_multipliers: IntArray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    time: float = 0.0

    def __post_init__(self) -> None:
        for (sid, kind), fc in self.entries.items():
            if kind is FieldKind.MULTIPLIER:
                raise ConstraintError(f"cannot constrain multiplier dofs (subdomain {sid.value})")

    def saddle_indices(self, sid: SubdomainId, layout: SaddleLayout) -> IntArray:
        """Sorted constrained positions inside the saddle vector of ``sid``."""
        parts = []
        for (s, kind), fc in self.entries.items():
            if s is not sid:
                continue
            if not layout.has(kind):
                raise ConstraintError(f"subdomain {sid.value} has no field {kind.value}")
            sl = layout.field_slice(kind)
            if fc.indices.size and (fc.indices.min() < 0 or fc.indices.max() >= sl.stop - sl.start):
                raise ConstraintError(f"constraint on {kind.value} references a dof out of range")
            parts.append(sl.start + fc.indices)
        if not parts:
            return np.empty(0, dtype=np.int64)
        return np.unique(np.concatenate(parts)).astype(np.int64)

    def same_pattern(self, other: "ConstraintSet") -> bool:
        if self.entries.keys() != other.entries.keys():
            return False
        if not np.array_equal(self.dropped_multipliers, other.dropped_multipliers):
            return False
        return all(np.array_equal(fc.indices, other.entries[key].indices) for key, fc in self.entries.items())


def _merge(indices: list[IntArray], values: list[FloatArray]) -> FieldConstraint:
    if not indices:
        return FieldConstraint(np.empty(0, dtype=np.int64), np.empty(0))
    idx = np.concatenate(indices).astype(np.int64)
    val = np.concatenate(values)
    unique, first = np.unique(idx, return_index=True)
    return FieldConstraint(unique, val[first])


def build_constraints(scenario: Scenario, disc: Discretization, t: float) -> ConstraintSet:
    """Collect all Dirichlet data of ``scenario`` at time ``t``.

    Displacement components marked DISPLACEMENT and pressures marked PRESSURE
    are prescribed at every node of the labelled segment (segment endpoints
    included). Multiplier components whose poroelastic trace dof is prescribed
    are dropped.

    Raises:
        MissingBoundaryDataError: If a labelled segment has no condition
    """
    entries: dict[tuple[SubdomainId, FieldKind], FieldConstraint] = {}
    for sid in SubdomainId:
        sub = disc.subdomain(sid)
        data = scenario.subdomain(sid)
        disp = sub.displacement
        u_idx: list[IntArray] = []
        u_val: list[FloatArray] = []
        p_idx: list[IntArray] = []
        p_val: list[FloatArray] = []
        for label in BoundaryLabel:
            if label not in disp.boundary_nodes:
                continue
            cond = scenario.condition(sid, label)
            nodes = disp.boundary_nodes[label]
            xy = disp.node_coords[nodes]
            if any(cond.is_dirichlet(c) for c in range(2)):
                u = data.displacement_bc(xy[:, 0], xy[:, 1], t)
                for c in range(2):
                    if cond.is_dirichlet(c):
                        u_idx.append(disp.node_dofs(nodes, c))
                        u_val.append(np.asarray(u[c], dtype=np.float64))
            if sid is SubdomainId.P and cond.pressure is BoundaryKind.PRESSURE:
                scalar = disc.poro.dofs[FieldKind.FLUID_PRESSURE]
                snodes = scalar.boundary_nodes[label]
                sxy = scalar.node_coords[snodes]
                p_idx.append(snodes)
                p_val.append(np.asarray(scenario.pressure_bc(sxy[:, 0], sxy[:, 1], t), dtype=np.float64))
        entries[(sid, FieldKind.DISPLACEMENT)] = _merge(u_idx, u_val)
        if sid is SubdomainId.P:
            entries[(sid, FieldKind.FLUID_PRESSURE)] = _merge(p_idx, p_val)

    fixed_p = entries[(SubdomainId.P, FieldKind.DISPLACEMENT)].indices
    trace_nodes = multiplier_trace_nodes(disc)
    trace_dofs = (2 * trace_nodes[:, None] + np.arange(2)).ravel()
    dropped = np.flatnonzero(np.isin(trace_dofs, fixed_p)).astype(np.int64)
    return ConstraintSet(entries=entries, dropped_multipliers=dropped, time=t)


def apply_constraints(system: BlockSystem, constraints: ConstraintSet) -> BlockSystem:
    """Attach ``constraints`` to ``system``.

    The returned system eliminates constrained rows and columns symmetrically
    (unit diagonal) and drops the listed multiplier rows. Applying the same
    pattern again yields identical matrices.

    Raises:
        ConstraintError: If a constraint references an invalid dof
    """
    for sid in SubdomainId:
        constraints.saddle_indices(sid, system.layout(sid))
    if constraints.dropped_multipliers.size and constraints.dropped_multipliers.max() >= system.n_multipliers_full:
        raise ConstraintError("dropped multiplier index out of range")
    return dataclasses.replace(system, constraints=constraints)


def prescribed_vector(system: BlockSystem, sid: SubdomainId, constraints: ConstraintSet) -> FloatArray:
    """Saddle vector that holds the prescribed values and zeros elsewhere."""
    layout = system.layout(sid)
    g = np.zeros(layout.size)
    for (s, kind), fc in constraints.entries.items():
        if s is sid:
            g[layout.offset(kind) + fc.indices] = fc.values
    return g


def constrain_rhs(system: BlockSystem, sid: SubdomainId, rhs: FloatArray, constraints: ConstraintSet) -> FloatArray:
    """Lift prescribed values into a raw saddle right-hand side.

    b <- b - M[:, c] g_c on free rows, then b[c] = g_c.

    Raises:
        ConstraintError: If ``constraints`` do not match the pattern of ``system``
    """
    if system.constraints is None or not system.constraints.same_pattern(constraints):
        raise ConstraintError("right-hand side constraints differ from the matrix constraint pattern")
    fixed = system.constrained_dofs(sid)
    g = prescribed_vector(system, sid, constraints)
    b = np.asarray(rhs, dtype=np.float64) - system.raw_saddle(sid) @ g
    b[fixed] = g[fixed]
    return b
