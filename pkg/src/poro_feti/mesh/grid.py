#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Structured triangulation of an axis-aligned rectangle
# - Unique edge enumeration with triangle-to-edge map and boundary detection
# - Boundary tagging through a pluggable rule, with the top-bottom layout rule
#

"""
Structured triangular meshes of rectangular subdomains.

A subdomain rectangle is split into ``nx * ny`` cells; each cell is cut along
its lower-left to upper-right diagonal into two counterclockwise triangles.
Vertices are numbered row-major, ``j * (nx + 1) + i``.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from ..core.constants import COORDINATE_TOLERANCE, DEGENERATE_AREA_TOLERANCE
from ..core.exceptions import InvalidSubdivisionError, MeshError, UntaggedFacetError
from ..core.types import BoundaryLabel, FloatArray, IntArray, SubdomainId

__all__ = [
    "Rectangle",
    "Mesh",
    "TagRule",
    "build_subdomain_mesh",
    "tag_boundary_facets",
    "layout_rule",
    "check_mesh",
]


@dataclass(frozen=True)
class Rectangle:
    """Axis-aligned rectangle ``[x0, x1] x [y0, y1]``."""

    x0: float
    x1: float
    y0: float
    y1: float

    def __post_init__(self) -> None:
        if not (self.x1 - self.x0 > 0.0 and self.y1 - self.y0 > 0.0):
            raise MeshError(f"degenerate rectangle [{self.x0}, {self.x1}] x [{self.y0}, {self.y1}]")

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    @property
    def area(self) -> float:
        return self.width * self.height


@dataclass(frozen=True, eq=False)
class Mesh:
    """Triangulation of one subdomain.

    Attributes:
        vertices: (n_vertices, 2) coordinates
        triangles: (n_triangles, 3) vertex indices, counterclockwise
        edges: (n_edges, 2) vertex indices of each unique edge, sorted ascending
        triangle_edges: (n_triangles, 3) edge index of local edges (0,1), (1,2), (2,0)
        boundary_edges: indices into ``edges`` of edges owned by a single triangle
        facet_tags: boundary edge index -> label; empty until tagged
        subdomain_id: which subdomain this mesh discretizes
        rect: the rectangle that was triangulated
    """

    vertices: FloatArray
    triangles: IntArray
    edges: IntArray
    triangle_edges: IntArray
    boundary_edges: IntArray
    subdomain_id: SubdomainId
    rect: Rectangle
    nx: int
    ny: int
    facet_tags: Mapping[int, BoundaryLabel] = field(default_factory=dict)

    @property
    def n_vertices(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def n_triangles(self) -> int:
        return int(self.triangles.shape[0])

    @property
    def n_edges(self) -> int:
        return int(self.edges.shape[0])

    def triangle_coordinates(self) -> FloatArray:
        """Return vertex coordinates per triangle, shape (n_triangles, 3, 2)."""
        return self.vertices[self.triangles]

    def signed_areas(self) -> FloatArray:
        c = self.triangle_coordinates()
        d1 = c[:, 1] - c[:, 0]
        d2 = c[:, 2] - c[:, 0]
        return 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])

    def edge_midpoints(self) -> FloatArray:
        return 0.5 * (self.vertices[self.edges[:, 0]] + self.vertices[self.edges[:, 1]])

    def edges_with_label(self, label: BoundaryLabel) -> IntArray:
        """Indices of boundary edges carrying ``label``, in ascending edge order."""
        return np.array(sorted(e for e, tag in self.facet_tags.items() if tag == label), dtype=np.int64)


def build_subdomain_mesh(
    rect: Rectangle,
    nx: int,
    ny: int,
    subdomain: SubdomainId = SubdomainId.P,
) -> Mesh:
    """Triangulate ``rect`` with an ``nx`` by ``ny`` structured grid.

    Args:
        rect: Rectangle to triangulate
        nx: Cells along x
        ny: Cells along y
        subdomain: Subdomain the mesh belongs to

    Returns:
        Untagged mesh with ``2 * nx * ny`` triangles

    Raises:
        InvalidSubdivisionError: If ``nx`` or ``ny`` is below 1
    """
    if nx < 1 or ny < 1:
        raise InvalidSubdivisionError(f"subdivision counts must be >= 1, got nx={nx}, ny={ny}")

    xs = np.linspace(rect.x0, rect.x1, nx + 1)
    ys = np.linspace(rect.y0, rect.y1, ny + 1)
    xx, yy = np.meshgrid(xs, ys, indexing="xy")
    vertices = np.column_stack([xx.ravel(), yy.ravel()])

    i, j = np.meshgrid(np.arange(nx), np.arange(ny), indexing="xy")
    v00 = (j * (nx + 1) + i).ravel()
    v10 = v00 + 1
    v01 = v00 + (nx + 1)
    v11 = v01 + 1
    lower = np.column_stack([v00, v10, v11])
    upper = np.column_stack([v00, v11, v01])
    triangles = np.empty((2 * nx * ny, 3), dtype=np.int64)
    triangles[0::2] = lower
    triangles[1::2] = upper

    local_pairs = np.stack([triangles[:, [0, 1]], triangles[:, [1, 2]], triangles[:, [2, 0]]], axis=1)
    all_edges = np.sort(local_pairs.reshape(-1, 2), axis=1)
    edges, inverse, counts = np.unique(all_edges, axis=0, return_inverse=True, return_counts=True)
    triangle_edges = inverse.reshape(-1, 3).astype(np.int64)
    boundary_edges = np.flatnonzero(counts == 1).astype(np.int64)

    mesh = Mesh(
        vertices=vertices,
        triangles=triangles,
        edges=edges.astype(np.int64),
        triangle_edges=triangle_edges,
        boundary_edges=boundary_edges,
        subdomain_id=subdomain,
        rect=rect,
        nx=nx,
        ny=ny,
    )
    check_mesh(mesh)
    return mesh


TagRule = Callable[[float, float, Mesh], "BoundaryLabel | None"]


def layout_rule(interface_height: float, tol: float = COORDINATE_TOLERANCE) -> TagRule:
    """Labelling rule for the top-bottom coupled layout.

    Edges at ``y == interface_height`` are the interface; the remaining sides
    of each subdomain rectangle get the labels Gamma_1 (right), Gamma_2
    (bottom), Gamma_3 (left), Gamma_4 (top).

    Args:
        interface_height: y coordinate of the shared segment
        tol: Coordinate tolerance

    Returns:
        Rule mapping an edge midpoint to its label
    """

    def rule(x: float, y: float, mesh: Mesh) -> BoundaryLabel | None:
        if abs(y - interface_height) <= tol:
            return BoundaryLabel.INTERFACE
        rect = mesh.rect
        if abs(x - rect.x1) <= tol:
            return BoundaryLabel.GAMMA_1
        if abs(y - rect.y0) <= tol:
            return BoundaryLabel.GAMMA_2
        if abs(x - rect.x0) <= tol:
            return BoundaryLabel.GAMMA_3
        if abs(y - rect.y1) <= tol:
            return BoundaryLabel.GAMMA_4
        return None

    return rule


def tag_boundary_facets(mesh: Mesh, rule: TagRule) -> Mesh:
    """Assign a label to every boundary edge.

    Args:
        mesh: Mesh with enumerated boundary edges
        rule: Callable mapping an edge midpoint to a label

    Returns:
        New mesh with ``facet_tags`` filled

    Raises:
        UntaggedFacetError: If the rule returns nothing for some boundary edge
    """
    midpoints = mesh.edge_midpoints()
    tags: dict[int, BoundaryLabel] = {}
    for e in mesh.boundary_edges.tolist():
        x, y = midpoints[e]
        label = rule(float(x), float(y), mesh)
        if label is None:
            raise UntaggedFacetError(f"boundary edge {e} at ({x:.6g}, {y:.6g}) of subdomain {mesh.subdomain_id.value} has no label")
        tags[e] = label
    return dataclasses.replace(mesh, facet_tags=tags)


def check_mesh(mesh: Mesh) -> None:
    """Validate orientation and area partition; raises MeshError on failure."""
    areas = mesh.signed_areas()
    if np.any(areas <= DEGENERATE_AREA_TOLERANCE):
        raise MeshError("mesh contains non-positive or degenerate triangles")
    if abs(areas.sum() - mesh.rect.area) > 1e-12 * mesh.rect.area:
        raise MeshError("triangle areas do not partition the rectangle")
