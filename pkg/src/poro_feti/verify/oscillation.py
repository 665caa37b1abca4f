#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Spurious pressure oscillation check over a pressure history
# - Location of the pressure maximum
#

"""
Pressure oscillation checks for the Barry-Mercer run.

Nodal pressures must stay inside [-bound, ceiling + bound], where ceiling is
the largest boundary pressure applied during the run.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any, Iterable

import numpy as np

from ..core.constants import BARRY_MERCER_LOAD_END, BARRY_MERCER_LOAD_START, COORDINATE_TOLERANCE
from ..core.types import FloatArray
from ..mesh.dofs import DofMap
from ..model.scenarios import loaded_segment_pressure
from ..timeloop.state import StateSnapshot

__all__ = [
    "OscillationReport",
    "OscillationMonitor",
    "oscillation_check",
    "boundary_pressure_ceiling",
    "pressure_peak_location",
    "peak_on_loaded_segment",
]


@dataclass(frozen=True)
class OscillationReport:
    """Result of an oscillation check.

    Attributes:
        passed: No nodal pressure left the admissible band
        min_value: Smallest nodal pressure seen
        max_value: Largest nodal pressure seen
        worst_violation: Pressure value farthest outside the band (None if passed)
        worst_step: Step index of ``worst_violation``
        bound: Band tolerance
        ceiling: Upper end of the band before tolerance
    """

    passed: bool
    min_value: float
    max_value: float
    worst_violation: float | None
    worst_step: int | None
    bound: float
    ceiling: float

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


class OscillationMonitor:
    """Streaming form of ``oscillation_check``, usable as a time-loop hook."""

    def __init__(self, bound: float, ceiling: float = 0.0) -> None:
        self.bound = bound
        self.ceiling = ceiling
        self._min = np.inf
        self._max = -np.inf
        self._excess = 0.0
        self._worst: float | None = None
        self._worst_step: int | None = None

    def update(self, step: int, pressure: FloatArray) -> None:
        p = np.asarray(pressure, dtype=np.float64)
        if p.size == 0:
            return
        lo, hi = float(p.min()), float(p.max())
        self._min = min(self._min, lo)
        self._max = max(self._max, hi)
        for value, excess in ((lo, -self.bound - lo), (hi, hi - self.ceiling - self.bound)):
            if excess > self._excess:
                self._excess = excess
                self._worst = value
                self._worst_step = step

    def __call__(self, state: StateSnapshot, report: object = None) -> None:
        self.update(state.n, state.p)

    def report(self) -> OscillationReport:
        seen = np.isfinite(self._min)
        return OscillationReport(
            passed=self._worst is None,
            min_value=float(self._min) if seen else 0.0,
            max_value=float(self._max) if seen else 0.0,
            worst_violation=self._worst,
            worst_step=self._worst_step,
            bound=self.bound,
            ceiling=self.ceiling,
        )


def oscillation_check(
    history: Iterable[StateSnapshot | FloatArray],
    bound: float,
    ceiling: float = 0.0,
) -> OscillationReport:
    """Check that every nodal pressure stays within [-bound, ceiling + bound].

    Args:
        history: Snapshots or raw pressure vectors, in time order
        bound: Tolerance delta
        ceiling: Largest admissible pressure before tolerance

    Returns:
        Report with the extremal values and the worst violation
    """
    monitor = OscillationMonitor(bound, ceiling)
    for k, item in enumerate(history):
        if isinstance(item, StateSnapshot):
            monitor.update(item.n, item.p)
        else:
            monitor.update(k, item)
    return monitor.report()


def boundary_pressure_ceiling(times: FloatArray) -> float:
    """max |p_2| over the given time levels."""
    xs = np.linspace(BARRY_MERCER_LOAD_START, BARRY_MERCER_LOAD_END, 3)
    return float(max((np.abs(loaded_segment_pressure(xs, float(t))).max() for t in times), default=0.0))


def pressure_peak_location(pressure: FloatArray, dofmap: DofMap) -> tuple[float, float]:
    """Coordinates of the node with the largest pressure."""
    k = int(np.argmax(np.asarray(pressure)))
    x, y = dofmap.node_coords[k]
    return float(x), float(y)


def peak_on_loaded_segment(location: tuple[float, float], h: float, bottom: float = 0.0) -> bool:
    """Whether ``location`` lies on, or one cell away from, the loaded bottom segment."""
    x, y = location
    slack = h + COORDINATE_TOLERANCE
    return y - bottom <= slack and BARRY_MERCER_LOAD_START - slack <= x <= BARRY_MERCER_LOAD_END + slack
