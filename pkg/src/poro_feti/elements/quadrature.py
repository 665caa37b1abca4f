#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Symmetric triangle rules up to degree 4
# - Gauss-Legendre rules on the unit edge
#

"""
Quadrature rules on the reference triangle and the reference edge.

Triangle weights sum to 1/2 (the reference area); edge weights sum to 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core.constants import MAX_QUADRATURE_DEGREE
from ..core.exceptions import QuadratureDegreeError
from ..core.types import FloatArray

__all__ = ["QuadratureRule", "quadrature_rule", "edge_quadrature_rule"]

# Six-point symmetric rule, exact to degree 4 (weights normalized to area 1)
_D4_A1 = 0.44594849091596488631832925388305
_D4_W1 = 0.22338158967801146569500700843312
_D4_A2 = 0.091576213509770743459571463402202
_D4_W2 = 0.10995174365532186763832632490021


@dataclass(frozen=True)
class QuadratureRule:
    """Points in reference coordinates and weights in reference-measure units."""

    points: FloatArray
    weights: FloatArray
    degree: int

    @property
    def n_points(self) -> int:
        return int(self.weights.shape[0])


def quadrature_rule(degree: int) -> QuadratureRule:
    """Return a triangle rule exact for polynomials up to ``degree``.

    Args:
        degree: Required exactness, 0..4

    Returns:
        The cheapest built-in rule meeting the requirement

    Raises:
        QuadratureDegreeError: If ``degree`` exceeds the supported maximum
    """
    if degree < 0 or degree > MAX_QUADRATURE_DEGREE:
        raise QuadratureDegreeError(f"no triangle rule of degree {degree} (supported 0..{MAX_QUADRATURE_DEGREE})")
    if degree <= 1:
        return QuadratureRule(points=np.array([[1.0 / 3.0, 1.0 / 3.0]]), weights=np.array([0.5]), degree=1)
    if degree == 2:
        points = np.array([[1.0 / 6.0, 1.0 / 6.0], [2.0 / 3.0, 1.0 / 6.0], [1.0 / 6.0, 2.0 / 3.0]])
        return QuadratureRule(points=points, weights=np.full(3, 1.0 / 6.0), degree=2)
    a1, a2 = _D4_A1, _D4_A2
    points = np.array(
        [
            [a1, a1],
            [1.0 - 2.0 * a1, a1],
            [a1, 1.0 - 2.0 * a1],
            [a2, a2],
            [1.0 - 2.0 * a2, a2],
            [a2, 1.0 - 2.0 * a2],
        ]
    )
    weights = 0.5 * np.array([_D4_W1, _D4_W1, _D4_W1, _D4_W2, _D4_W2, _D4_W2])
    return QuadratureRule(points=points, weights=weights, degree=4)


def edge_quadrature_rule(n_points: int) -> QuadratureRule:
    """Gauss-Legendre rule with ``n_points`` nodes mapped to [0, 1]."""
    nodes, weights = np.polynomial.legendre.leggauss(n_points)
    return QuadratureRule(
        points=0.5 * (nodes + 1.0),
        weights=0.5 * weights,
        degree=2 * n_points - 1,
    )
