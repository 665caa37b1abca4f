#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Legacy ASCII VTK export of triangle meshes through meshio
# - Union mesh of both subdomains with interface vertices merged
#

"""
VTK export of subdomain meshes and nodal point data.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

import meshio
import numpy as np

from ..core.constants import COORDINATE_TOLERANCE
from ..core.exceptions import OutputError
from ..core.types import FloatArray, IntArray
from .grid import Mesh

__all__ = ["UnionMesh", "union_mesh", "write_vtk"]


@dataclass(frozen=True, eq=False)
class UnionMesh:
    """Both subdomains glued along the interface.

    Attributes:
        points: (n_points, 2) coordinates, poroelastic vertices first
        triangles: (n_triangles, 3) indices into ``points``
        elastic_to_union: union point index of every elastic-mesh vertex
    """

    points: FloatArray
    triangles: IntArray
    elastic_to_union: IntArray

    @property
    def n_points(self) -> int:
        return int(self.points.shape[0])


def union_mesh(mesh_p: Mesh, mesh_e: Mesh) -> UnionMesh:
    """Merge two meshes, identifying elastic vertices that coincide with poroelastic ones."""
    n_p = mesh_p.n_vertices
    elastic_to_union = np.full(mesh_e.n_vertices, -1, dtype=np.int64)
    # Only vertices on the shared segment can coincide
    shared_y = mesh_p.rect.y1 if abs(mesh_p.rect.y1 - mesh_e.rect.y0) <= COORDINATE_TOLERANCE else mesh_p.rect.y0
    on_p = np.flatnonzero(np.abs(mesh_p.vertices[:, 1] - shared_y) <= COORDINATE_TOLERANCE)
    on_e = np.flatnonzero(np.abs(mesh_e.vertices[:, 1] - shared_y) <= COORDINATE_TOLERANCE)
    for v in on_e:
        d = np.abs(mesh_p.vertices[on_p, 0] - mesh_e.vertices[v, 0])
        k = int(np.argmin(d))
        if d[k] <= COORDINATE_TOLERANCE:
            elastic_to_union[v] = on_p[k]
    fresh = np.flatnonzero(elastic_to_union < 0)
    elastic_to_union[fresh] = n_p + np.arange(fresh.size)
    points = np.vstack([mesh_p.vertices, mesh_e.vertices[fresh]])
    triangles = np.vstack([mesh_p.triangles, elastic_to_union[mesh_e.triangles]])
    return UnionMesh(points=points, triangles=triangles, elastic_to_union=elastic_to_union)


def write_vtk(
    path: Path,
    points: FloatArray,
    triangles: IntArray,
    point_data: Mapping[str, FloatArray] | None = None,
) -> Path:
    """Write a triangle mesh with point data as a legacy ASCII VTK file.

    Args:
        path: Destination file
        points: (n, 2) or (n, 3) coordinates
        triangles: (m, 3) connectivity
        point_data: Name -> (n,) or (n, k) arrays

    Returns:
        The written path

    Raises:
        OutputError: If the file cannot be written
    """
    pts = np.zeros((points.shape[0], 3))
    pts[:, : points.shape[1]] = points
    data = {}
    for name, values in (point_data or {}).items():
        values = np.asarray(values, dtype=np.float64)
        if values.ndim == 2 and values.shape[1] == 2:
            padded = np.zeros((values.shape[0], 3))
            padded[:, :2] = values
            values = padded
        data[name] = values
    mesh = meshio.Mesh(pts, [("triangle", np.asarray(triangles, dtype=np.int64))], point_data=data)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        mesh.write(path, file_format="vtk", binary=False)
    except OSError as e:
        raise OutputError(f"cannot write VTK file ({e})", path) from e
    return path
