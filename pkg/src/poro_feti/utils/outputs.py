#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Strided VTK snapshot writer on the glued two-subdomain mesh
# - Solver log, convergence table and oscillation report files
#

"""
Output artifacts of a run.

VTK snapshots carry vertex values only (P2 midpoint values are dropped).
Fields that exist on the poroelastic side only are written as zero on the
elastic vertices.
"""

from __future__ import annotations

import csv
from pathlib import Path
from types import TracebackType
from typing import Any, TextIO

import numpy as np

from ..core.constants import (
    CONVERGENCE_TABLE_FILE,
    CONVERGENCE_TABLE_HEADER,
    OSCILLATION_REPORT_FILE,
    SNAPSHOT_FILE_PATTERN,
    SOLVER_LOG_FILE,
    SOLVER_LOG_HEADER,
)
from ..core.exceptions import OutputError
from ..core.types import FloatArray, SubdomainId
from ..mesh.discretization import Discretization
from ..mesh.vtk import UnionMesh, union_mesh, write_vtk
from ..solver.pcg import PcgReport
from ..timeloop.state import StateSnapshot
from ..verify.convergence import ErrorTable
from ..verify.oscillation import OscillationReport
from .json_handlers import dump_json

__all__ = [
    "SnapshotWriter",
    "SolverLog",
    "snapshot_point_data",
    "write_convergence_csv",
    "write_oscillation_report",
]


def _ensure_dir(directory: Path) -> Path:
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OutputError(f"cannot create output directory ({e})", directory) from e
    return directory


def snapshot_point_data(state: StateSnapshot, disc: Discretization, glued: UnionMesh) -> dict[str, FloatArray]:
    """Vertex values of displacement, pressure, elastic pressure and fluid content."""
    n_p = disc.poro.mesh.n_vertices
    n_e = disc.elastic.mesh.n_vertices
    fresh = glued.elastic_to_union >= n_p
    target = glued.elastic_to_union[fresh]

    def glue(values_p: FloatArray, values_e: FloatArray | None) -> FloatArray:
        shape = (glued.n_points, *values_p.shape[1:])
        out = np.zeros(shape)
        out[:n_p] = values_p
        if values_e is not None:
            out[target] = values_e[fresh]
        return out

    def vertex_displacement(sid: SubdomainId, n: int) -> FloatArray:
        return state.displacement(sid).reshape(-1, 2)[:n]

    return {
        "displacement": glue(vertex_displacement(SubdomainId.P, n_p), vertex_displacement(SubdomainId.E, n_e)),
        "pressure": glue(state.p[:n_p], None),
        "elastic_pressure": glue(state.xi_P[:n_p], state.xi_E[:n_e]),
        "fluid_content": glue(state.eta[:n_p], None),
    }


class SnapshotWriter:
    """Time-loop hook that writes every ``stride``-th step as ``step_%06d.vtk``."""

    def __init__(self, disc: Discretization, directory: Path, stride: int = 1) -> None:
        if stride < 1:
            raise ValueError(f"stride must be positive, got {stride}")
        self.disc = disc
        self.directory = _ensure_dir(directory)
        self.stride = stride
        self.glued = union_mesh(disc.poro.mesh, disc.elastic.mesh)
        self.written: list[Path] = []

    def write(self, state: StateSnapshot) -> Path:
        path = self.directory / SNAPSHOT_FILE_PATTERN.format(state.n)
        write_vtk(path, self.glued.points, self.glued.triangles, snapshot_point_data(state, self.disc, self.glued))
        self.written.append(path)
        return path

    def __call__(self, state: StateSnapshot, report: PcgReport | None = None) -> None:
        if state.n % self.stride == 0:
            self.write(state)


class SolverLog:
    """solver_log.csv with one row per time step, flushed as it goes."""

    def __init__(self, directory: Path) -> None:
        self.path = _ensure_dir(directory) / SOLVER_LOG_FILE
        try:
            self._handle: TextIO | None = self.path.open("w", encoding="utf-8", newline="")
        except OSError as e:
            raise OutputError(f"cannot open solver log ({e})", self.path) from e
        self._writer = csv.writer(self._handle, lineterminator="\n")
        self._writer.writerow(SOLVER_LOG_HEADER)

    def __call__(self, state: StateSnapshot, report: PcgReport) -> None:
        if self._handle is None:
            raise OutputError("solver log is closed", self.path)
        self._writer.writerow(
            [
                state.n,
                report.variant.value,
                report.iterations,
                repr(float(report.relative_residual)),
                f"{report.solve_times.get(SubdomainId.P, 0.0):.6f}",
                f"{report.solve_times.get(SubdomainId.E, 0.0):.6f}",
            ]
        )
        self._handle.flush()

    def close(self) -> None:
        if self._handle is not None:
            self._handle.close()
            self._handle = None

    def __enter__(self) -> "SolverLog":
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc: BaseException | None,
        tb: TracebackType | None,
    ) -> None:
        self.close()


def _order(value: float | None) -> str:
    return "" if value is None else repr(float(value))


def write_convergence_csv(table: ErrorTable, directory: Path) -> Path:
    """convergence.csv with the header nu,h,err_u,order_u,err_p,order_p."""
    path = _ensure_dir(directory) / CONVERGENCE_TABLE_FILE
    try:
        with path.open("w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(CONVERGENCE_TABLE_HEADER)
            for row in table.rows:
                writer.writerow([repr(row.nu), repr(row.h), repr(row.err_u), _order(row.order_u), repr(row.err_p), _order(row.order_p)])
    except OSError as e:
        raise OutputError(f"cannot write convergence table ({e})", path) from e
    return path


def write_oscillation_report(
    report: OscillationReport,
    directory: Path,
    peak: tuple[float, float] | None = None,
    extra: dict[str, Any] | None = None,
) -> Path:
    """oscillation.json with the check result and the pressure peak location."""
    path = _ensure_dir(directory) / OSCILLATION_REPORT_FILE
    data = {**report.to_dict(), "peak": None if peak is None else {"x": peak[0], "y": peak[1]}, **(extra or {})}
    try:
        return dump_json(data, path)
    except OSError as e:
        raise OutputError(f"cannot write oscillation report ({e})", path) from e
