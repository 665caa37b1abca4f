#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Sparse scatter of the elastic, div-coupling, mass and diffusion blocks
# - Saddle layouts and composite per-subdomain saddle matrices
# - BlockSystem with cached constrained matrices and reduced coupling maps
# - Rigid-body modes and the full coupled matrix for oracles
#

"""
Global sparse blocks of the coupled system.

Per-subdomain unknowns are stacked into one saddle vector:

    poroelastic: [u_P, eta, xi_P, p]   primal (u_P, eta), dual (xi_P, p)
    elastic:     [u_E, xi_E]           primal u_E,        dual xi_E

and the saddle matrix is [[A*, B*^T], [B*, -C*]] with

    A_P* = diag(A_P, k2 R_P)      B_P* = [[B_P, k1 R_P], [0, -R_P]]
    C_P* = diag(k3 R_P, tau A_f)  C_E  = R_E / lambda_E

The coupling maps are H_P* = [H_P, 0] and H_E* = -[H_E, 0], so the interface
row reads H_P u_P - H_E u_E = 0.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Mapping

import numpy as np
import scipy.sparse as sp

from ..core.exceptions import DimensionMismatchError
from ..core.types import FieldKind, FloatArray, FormKind, IntArray, SubdomainId
from ..elements.local_forms import element_matrices
from ..mesh.discretization import Discretization, SubdomainDiscretization
from ..mesh.dofs import FieldOrders
from ..model.params import ModelParams
from .interface import assemble_interface

if TYPE_CHECKING:
    from .constraints import ConstraintSet

__all__ = [
    "SaddleLayout",
    "SubdomainBlocks",
    "BlockSystem",
    "scatter_matrix",
    "saddle_layout",
    "assemble_subdomain_blocks",
    "assemble_block_system",
    "rigid_body_modes",
    "coupled_matrix",
]


@dataclass(frozen=True)
class SaddleLayout:
    """Field order and sizes inside one subdomain saddle vector."""

    fields: tuple[tuple[FieldKind, int], ...]
    n_primal: int

    @property
    def size(self) -> int:
        return sum(n for _, n in self.fields)

    def offset(self, kind: FieldKind) -> int:
        start = 0
        for k, n in self.fields:
            if k is kind:
                return start
            start += n
        raise KeyError(kind)

    def field_slice(self, kind: FieldKind) -> slice:
        start = self.offset(kind)
        return slice(start, start + dict(self.fields)[kind])

    def has(self, kind: FieldKind) -> bool:
        return any(k is kind for k, _ in self.fields)

    def split(self, vector: FloatArray) -> dict[FieldKind, FloatArray]:
        return {k: vector[self.field_slice(k)] for k, _ in self.fields}


def saddle_layout(sid: SubdomainId, n_displacement: int, n_scalar: int) -> SaddleLayout:
    if SubdomainId(sid) is SubdomainId.P:
        return SaddleLayout(
            fields=(
                (FieldKind.DISPLACEMENT, n_displacement),
                (FieldKind.FLUID_CONTENT, n_scalar),
                (FieldKind.ELASTIC_PRESSURE, n_scalar),
                (FieldKind.FLUID_PRESSURE, n_scalar),
            ),
            n_primal=n_displacement + n_scalar,
        )
    return SaddleLayout(
        fields=((FieldKind.DISPLACEMENT, n_displacement), (FieldKind.ELASTIC_PRESSURE, n_scalar)),
        n_primal=n_displacement,
    )


def scatter_matrix(local: FloatArray, row_dofs: IntArray, col_dofs: IntArray, shape: tuple[int, int]) -> sp.csr_matrix:
    """Sum batched local matrices (n, r, c) into a CSR matrix."""
    rows = np.broadcast_to(row_dofs[:, :, None], local.shape).ravel()
    cols = np.broadcast_to(col_dofs[:, None, :], local.shape).ravel()
    return sp.coo_matrix((local.ravel(), (rows, cols)), shape=shape).tocsr()


@dataclass(frozen=True, eq=False)
class SubdomainBlocks:
    """Unconstrained sparse blocks of one subdomain.

    Attributes:
        subdomain: Which subdomain
        A: Elastic stiffness, 2 mu (eps, eps)
        B: Div-coupling, -(psi, div phi), scalar rows and displacement columns
        R: Scalar mass matrix
        H: Interface coupling, multiplier rows and displacement columns
        Af: Pressure diffusion (poroelastic subdomain only)
    """

    subdomain: SubdomainId
    A: sp.csr_matrix
    B: sp.csr_matrix
    R: sp.csr_matrix
    H: sp.csr_matrix
    Af: sp.csr_matrix | None = None

    def __post_init__(self) -> None:
        nu, ns = self.A.shape[0], self.R.shape[0]
        if self.A.shape != (nu, nu) or self.R.shape != (ns, ns):
            raise DimensionMismatchError(f"{self.subdomain.value}: A and R must be square")
        if self.B.shape != (ns, nu):
            raise DimensionMismatchError(f"{self.subdomain.value}: B has shape {self.B.shape}, expected {(ns, nu)}")
        if self.H.shape[1] != nu:
            raise DimensionMismatchError(f"{self.subdomain.value}: H has {self.H.shape[1]} columns, expected {nu}")
        if self.Af is not None and self.Af.shape != (ns, ns):
            raise DimensionMismatchError(f"{self.subdomain.value}: A_f has shape {self.Af.shape}, expected {(ns, ns)}")

    @property
    def n_displacement(self) -> int:
        return int(self.A.shape[0])

    @property
    def n_scalar(self) -> int:
        return int(self.R.shape[0])

    @property
    def layout(self) -> SaddleLayout:
        return saddle_layout(self.subdomain, self.n_displacement, self.n_scalar)

    def named_blocks(self) -> dict[str, sp.spmatrix]:
        """Blocks keyed by their conventional names, e.g. ``A_P``."""
        tag = self.subdomain.value
        blocks: dict[str, sp.spmatrix] = {f"A_{tag}": self.A, f"B_{tag}": self.B, f"R_{tag}": self.R, f"H_{tag}": self.H}
        if self.Af is not None:
            blocks["A_f"] = self.Af
        return blocks


def assemble_subdomain_blocks(
    sub: SubdomainDiscretization,
    params: ModelParams,
    orders: FieldOrders,
    H: sp.csr_matrix,
) -> SubdomainBlocks:
    """Assemble all volume blocks of one subdomain by element scatter.

    Args:
        sub: Mesh and dof maps of the subdomain
        params: Material constants
        orders: Polynomial orders
        H: Interface coupling matrix of this subdomain

    Returns:
        Unconstrained blocks
    """
    coords = sub.mesh.triangle_coordinates()
    udofs = sub.displacement.cell_dofs
    sdofs = sub.scalar.cell_dofs
    nu, ns = sub.n_displacement, sub.n_scalar
    sid = sub.subdomain

    def volume(kind: FormKind) -> FloatArray:
        return element_matrices(kind, coords, params, orders, sid)

    A = scatter_matrix(volume(FormKind.ELASTIC), udofs, udofs, (nu, nu))
    B = scatter_matrix(volume(FormKind.DIV_COUPLING), sdofs, udofs, (ns, nu))
    R = scatter_matrix(volume(FormKind.MASS), sdofs, sdofs, (ns, ns))
    Af = scatter_matrix(volume(FormKind.DIFFUSION), sdofs, sdofs, (ns, ns)) if sid is SubdomainId.P else None
    return SubdomainBlocks(subdomain=sid, A=A, B=B, R=R, H=H, Af=Af)


@dataclass(frozen=True, eq=False)
class BlockSystem:
    """Assembled blocks of both subdomains plus the constraint pattern.

    Derived matrices are cached per instance. ``apply_constraints`` returns a
    new instance, so constrained matrices are always rebuilt from the raw
    blocks.
    """

    poro: SubdomainBlocks
    elastic: SubdomainBlocks
    params: ModelParams
    tau: float
    constraints: ConstraintSet | None = None

    def __post_init__(self) -> None:
        if self.poro.H.shape[0] != self.elastic.H.shape[0]:
            raise DimensionMismatchError("H_P and H_E must have the same number of multiplier rows")
        if self.poro.Af is None:
            raise DimensionMismatchError("the poroelastic blocks need A_f")

    def blocks(self, sid: SubdomainId) -> SubdomainBlocks:
        return self.poro if SubdomainId(sid) is SubdomainId.P else self.elastic

    def layout(self, sid: SubdomainId) -> SaddleLayout:
        return self.blocks(sid).layout

    @property
    def n_multipliers_full(self) -> int:
        return int(self.poro.H.shape[0])

    # Composite blocks

    @cached_property
    def composite(self) -> Mapping[str, sp.csr_matrix]:
        """A_P*, B_P*, C_P*, A_E*, B_E*, C_E."""
        k1, k2, k3 = self.params.kappas
        p, e = self.poro, self.elastic
        ns = p.n_scalar
        assert p.Af is not None
        zero = sp.csr_matrix((ns, p.n_displacement))
        return {
            "A_P*": sp.block_diag([p.A, k2 * p.R], format="csr"),
            "B_P*": sp.bmat([[p.B, k1 * p.R], [zero, -p.R]], format="csr"),
            "C_P*": sp.block_diag([k3 * p.R, self.tau * p.Af], format="csr"),
            "A_E*": e.A.tocsr(),
            "B_E*": e.B.tocsr(),
            "C_E": (e.R / self.params.lambda_E).tocsr(),
        }

    def _raw_saddle(self, sid: SubdomainId) -> sp.csr_matrix:
        tag = "P" if SubdomainId(sid) is SubdomainId.P else "E"
        c = self.composite
        a = c[f"A_{tag}*"]
        b = c[f"B_{tag}*"]
        cc = c["C_P*"] if tag == "P" else c["C_E"]
        return sp.bmat([[a, b.T], [b, -cc]], format="csr")

    @cached_property
    def raw_saddles(self) -> Mapping[SubdomainId, sp.csr_matrix]:
        return {sid: self._raw_saddle(sid) for sid in SubdomainId}

    def raw_saddle(self, sid: SubdomainId) -> sp.csr_matrix:
        return self.raw_saddles[SubdomainId(sid)]

    def _raw_coupling(self, sid: SubdomainId) -> sp.csr_matrix:
        blocks = self.blocks(sid)
        n_dual = self.layout(sid).size - blocks.n_displacement
        pad = sp.csr_matrix((blocks.H.shape[0], n_dual))
        sign = 1.0 if SubdomainId(sid) is SubdomainId.P else -1.0
        return sp.hstack([sign * blocks.H, pad], format="csr")

    def raw_coupling(self, sid: SubdomainId) -> sp.csr_matrix:
        """H_D* over the full multiplier space."""
        return self._raw_coupling(sid)

    # Constrained views

    def constrained_dofs(self, sid: SubdomainId) -> IntArray:
        if self.constraints is None:
            return np.empty(0, dtype=np.int64)
        return self.constraints.saddle_indices(SubdomainId(sid), self.layout(sid))

    @cached_property
    def kept_multipliers(self) -> IntArray:
        """Full-space indices of the multiplier dofs that remain after dropping."""
        dropped = np.empty(0, dtype=np.int64) if self.constraints is None else self.constraints.dropped_multipliers
        return np.setdiff1d(np.arange(self.n_multipliers_full), dropped).astype(np.int64)

    @property
    def n_multipliers(self) -> int:
        return int(self.kept_multipliers.size)

    def _free_mask(self, sid: SubdomainId) -> sp.dia_matrix:
        mask = np.ones(self.layout(sid).size)
        mask[self.constrained_dofs(sid)] = 0.0
        return sp.diags(mask)

    @cached_property
    def saddles(self) -> Mapping[SubdomainId, sp.csc_matrix]:
        out = {}
        for sid in SubdomainId:
            keep = self._free_mask(sid)
            m = keep @ self.raw_saddle(sid) @ keep + sp.diags(1.0 - keep.diagonal())
            out[sid] = sp.csc_matrix(m)
        return out

    def saddle(self, sid: SubdomainId) -> sp.csc_matrix:
        """Constrained saddle matrix of one subdomain (symmetric elimination)."""
        return self.saddles[SubdomainId(sid)]

    @cached_property
    def couplings(self) -> Mapping[SubdomainId, sp.csr_matrix]:
        out = {}
        for sid in SubdomainId:
            h = sp.csr_matrix(self.raw_coupling(sid)[self.kept_multipliers, :] @ self._free_mask(sid))
            h.eliminate_zeros()
            out[sid] = h
        return out

    def coupling(self, sid: SubdomainId) -> sp.csr_matrix:
        """H_D* restricted to kept multipliers, constrained columns zeroed."""
        return self.couplings[SubdomainId(sid)]

    def multiplier_lift(self, prescribed: Mapping[SubdomainId, FloatArray]) -> FloatArray:
        """g = -sum_D H*_{D, fixed} g_D for the kept multiplier rows.

        Args:
            prescribed: Full-length saddle vectors holding the Dirichlet values
                on constrained entries (other entries are ignored)
        """
        g = np.zeros(self.n_multipliers)
        for sid in SubdomainId:
            fixed = self.constrained_dofs(sid)
            if fixed.size == 0:
                continue
            h = self.raw_coupling(sid)[self.kept_multipliers, :][:, fixed]
            g -= h @ np.asarray(prescribed[sid])[fixed]
        return g

    def with_tau(self, tau: float) -> "BlockSystem":
        return dataclasses.replace(self, tau=tau)


def assemble_block_system(disc: Discretization, params: ModelParams, tau: float) -> BlockSystem:
    """Assemble the blocks of both subdomains and the interface coupling.

    Args:
        disc: Two-subdomain discretization
        params: Material constants
        tau: Time step entering C_P*

    Returns:
        Unconstrained BlockSystem
    """
    h_p, h_e = assemble_interface(disc)
    return BlockSystem(
        poro=assemble_subdomain_blocks(disc.poro, params, disc.orders, h_p),
        elastic=assemble_subdomain_blocks(disc.elastic, params, disc.orders, h_e),
        params=params,
        tau=tau,
    )


def rigid_body_modes(node_coords: FloatArray, n_total: int | None = None) -> FloatArray:
    """Two translations and the rotation (-y, x) on interleaved displacement dofs.

    Args:
        node_coords: (n_nodes, 2) displacement node coordinates
        n_total: Pad the modes with zeros up to this length (saddle vectors)

    Returns:
        Array of shape (3, n_total)
    """
    n = node_coords.shape[0]
    size = 2 * n if n_total is None else n_total
    modes = np.zeros((3, size))
    modes[0, 0 : 2 * n : 2] = 1.0
    modes[1, 1 : 2 * n : 2] = 1.0
    modes[2, 0 : 2 * n : 2] = -node_coords[:, 1]
    modes[2, 1 : 2 * n : 2] = node_coords[:, 0]
    return modes


def coupled_matrix(system: BlockSystem, constrained: bool = False) -> sp.csr_matrix:
    """The full coupled matrix in the order (u_P, xi_P, eta, p, u_E, xi_E, lambda).

    With ``constrained`` the constrained saddle blocks and reduced coupling
    maps are used, otherwise the raw blocks over the full multiplier space.
    """
    p_layout = system.layout(SubdomainId.P)
    perm = np.concatenate(
        [
            np.arange(p_layout.field_slice(k).start, p_layout.field_slice(k).stop)
            for k in (FieldKind.DISPLACEMENT, FieldKind.ELASTIC_PRESSURE, FieldKind.FLUID_CONTENT, FieldKind.FLUID_PRESSURE)
        ]
    )
    if constrained:
        m_p, m_e = system.saddle(SubdomainId.P), system.saddle(SubdomainId.E)
        h_p, h_e = system.coupling(SubdomainId.P), system.coupling(SubdomainId.E)
    else:
        m_p, m_e = system.raw_saddle(SubdomainId.P), system.raw_saddle(SubdomainId.E)
        h_p, h_e = system.raw_coupling(SubdomainId.P), system.raw_coupling(SubdomainId.E)
    m_p = sp.csr_matrix(m_p)[perm, :][:, perm]
    h_p = sp.csr_matrix(h_p)[:, perm]
    return sp.bmat(
        [
            [m_p, None, h_p.T],
            [None, m_e, h_e.T],
            [h_p, h_e, None],
        ],
        format="csr",
    )
