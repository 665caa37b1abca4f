#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Uniform backward Euler time grid
#

"""
Uniform time grid t_n = n T / N.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core.exceptions import ParameterError
from ..core.types import FloatArray
from ..model.scenarios import Scenario

__all__ = ["TimeGrid"]


@dataclass(frozen=True)
class TimeGrid:
    """N uniform steps on [0, T]."""

    final_time: float
    n_steps: int

    def __post_init__(self) -> None:
        if self.n_steps < 1:
            raise ParameterError(f"a time grid needs at least one step, got {self.n_steps}")
        if not self.final_time > 0.0:
            raise ParameterError(f"final time must be positive, got {self.final_time}")

    @classmethod
    def from_scenario(cls, scenario: Scenario) -> "TimeGrid":
        return cls(final_time=scenario.final_time, n_steps=scenario.n_steps)

    @property
    def tau(self) -> float:
        return self.final_time / self.n_steps

    def t(self, n: int) -> float:
        """t_n, computed as n T / N so that t_N == T."""
        if not 0 <= n <= self.n_steps:
            raise IndexError(f"step {n} outside 0..{self.n_steps}")
        return n * self.final_time / self.n_steps

    def times(self) -> FloatArray:
        return np.arange(self.n_steps + 1) * self.final_time / self.n_steps
