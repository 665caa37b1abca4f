#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Enums for subdomains, boundary labels and kinds, field kinds and form kinds
# - Solver, scenario and convention selectors used by the CLI and config layer
# - Shared logger type alias
#

"""
Type definitions and enums for poro-feti.

All enums derive from ``str`` so they serialize directly into config files,
CSV logs and Prefect parameters.
"""

from __future__ import annotations

import logging
from enum import Enum
from typing import Any, Callable, Union

import numpy as np
import numpy.typing as npt

__all__ = [
    "LoggerType",
    "FloatArray",
    "IntArray",
    "ScalarField",
    "VectorField",
    "SubdomainId",
    "BoundaryLabel",
    "BoundaryKind",
    "FieldKind",
    "FormKind",
    "SolverKind",
    "ScenarioName",
    "MuConvention",
    "RetentionPolicy",
    "Command",
]

# Note: LoggerAdapter is not generic in Python 3.10, so we use Any
LoggerType = Union[logging.Logger, Any, None]

FloatArray = npt.NDArray[np.float64]
IntArray = npt.NDArray[np.int64]

# f(x, y, t) -> values, vectorized over coordinate arrays of equal shape.
ScalarField = Callable[[FloatArray, FloatArray, float], FloatArray]
# f(x, y, t) -> array of shape (2, n).
VectorField = Callable[[FloatArray, FloatArray, float], FloatArray]


class SubdomainId(str, Enum):
    """The poroelastic (pay-zone) and elastic (nonpay-zone) subdomains."""

    P = "P"
    E = "E"


class BoundaryLabel(str, Enum):
    """Boundary segment labels of an axis-aligned rectangular subdomain."""

    GAMMA_1 = "gamma_1"  # right side, x = x_max
    GAMMA_2 = "gamma_2"  # bottom, y = y_min
    GAMMA_3 = "gamma_3"  # left side, x = x_min
    GAMMA_4 = "gamma_4"  # top, y = y_max
    INTERFACE = "interface"


class BoundaryKind(str, Enum):
    """Kinds of boundary condition a labelled facet can carry."""

    DISPLACEMENT = "dirichlet_displacement"
    TRACTION = "traction"
    PRESSURE = "dirichlet_pressure"
    FLUX = "flux"
    INTERFACE = "interface"


class FieldKind(str, Enum):
    """Discrete fields of the coupled system."""

    DISPLACEMENT = "displacement"
    ELASTIC_PRESSURE = "elastic_pressure"
    FLUID_CONTENT = "fluid_content"
    FLUID_PRESSURE = "fluid_pressure"
    MULTIPLIER = "multiplier"


class FormKind(str, Enum):
    """Local bilinear forms."""

    ELASTIC = "elastic"
    DIV_COUPLING = "div_coupling"
    MASS = "mass"
    DIFFUSION = "diffusion"
    INTERFACE = "interface"


class SolverKind(str, Enum):
    """Per-step linear solver choices."""

    FETI_GENERALIZED = "feti-generalized"
    FETI_SCHUR = "feti-schur"
    MONOLITHIC = "monolithic"


class ScenarioName(str, Enum):
    """Built-in scenarios."""

    MMS = "mms"
    BARRY_MERCER = "barry-mercer"


class MuConvention(str, Enum):
    """Shear modulus convention used when converting (E, nu) to Lame constants."""

    UNHALVED = "unhalved"  # mu = E / (1 + nu)
    STANDARD = "standard"  # mu = E / (2 (1 + nu))


class RetentionPolicy(str, Enum):
    """How many snapshots a simulation keeps in memory."""

    FULL = "full"
    LAST_TWO = "last-two"


class Command(str, Enum):
    """CLI commands."""

    SOLVE = "solve"
    CONVERGE = "converge"
    BARRY_MERCER = "barry-mercer"
