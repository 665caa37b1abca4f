#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Exception hierarchy rooted at PoroFetiError
# - Added docstrings to all exception classes
# - SimulationStepError and OutputError carry their context as attributes
#

"""
Custom exceptions for poro-feti.

Every error raised on purpose by the package derives from ``PoroFetiError`` so
the CLI can map failures to exit codes in one place.
"""

from __future__ import annotations

from pathlib import Path

__all__ = [
    "PoroFetiError",
    "ConfigError",
    "MeshError",
    "InvalidSubdivisionError",
    "UntaggedFacetError",
    "NonConformingInterfaceError",
    "EmptyInterfaceError",
    "UnsupportedOrderError",
    "QuadratureDegreeError",
    "DegenerateElementError",
    "ParameterError",
    "AssemblyError",
    "DimensionMismatchError",
    "MissingBoundaryDataError",
    "ConstraintError",
    "SolverError",
    "SingularSubproblemError",
    "IndefiniteOperatorError",
    "SolverConvergenceError",
    "SimulationStepError",
    "VerificationError",
    "EmptySnapshotError",
    "AcceptanceError",
    "OutputError",
]


class PoroFetiError(Exception):
    """Base class for all poro-feti errors."""

    pass


class ConfigError(PoroFetiError):
    """Raised when a configuration file or flag is invalid."""

    pass


class MeshError(PoroFetiError):
    """Raised when a mesh cannot be built, tagged or paired."""

    pass


class InvalidSubdivisionError(MeshError, ValueError):
    """Raised when a grid is requested with a zero or negative subdivision count."""

    pass


class UntaggedFacetError(MeshError):
    """Raised when a boundary edge cannot be assigned a label."""

    pass


class NonConformingInterfaceError(MeshError):
    """Raised when interface nodes of the two subdomains do not coincide."""

    pass


class EmptyInterfaceError(MeshError):
    """Raised when a subdomain has no edge on the interface."""

    pass


class UnsupportedOrderError(PoroFetiError, ValueError):
    """Raised when a polynomial order outside the supported set is requested."""

    pass


class QuadratureDegreeError(PoroFetiError, ValueError):
    """Raised when no quadrature rule of the requested exactness is available."""

    pass


class DegenerateElementError(PoroFetiError):
    """Raised when a triangle or edge has (near) zero measure."""

    pass


class ParameterError(PoroFetiError, ValueError):
    """Raised when physical parameters are outside their admissible range."""

    pass


class AssemblyError(PoroFetiError):
    """Raised when global blocks or load vectors cannot be assembled."""

    pass


class DimensionMismatchError(AssemblyError):
    """Raised when block dimensions are inconsistent."""

    pass


class MissingBoundaryDataError(AssemblyError):
    """Raised when a scenario lacks data for a tagged boundary segment."""

    pass


class ConstraintError(AssemblyError):
    """Raised when Dirichlet constraints reference invalid or multiplier dofs."""

    pass


class SolverError(PoroFetiError):
    """Base class for linear solver failures."""

    pass


class SingularSubproblemError(SolverError):
    """Raised when a subdomain saddle operator is numerically singular."""

    def __init__(self, message: str, subdomain: str | None = None) -> None:
        self.subdomain = subdomain
        super().__init__(message)


class IndefiniteOperatorError(SolverError):
    """Raised when PCG detects a non-positive curvature direction."""

    pass


class SolverConvergenceError(SolverError):
    """Raised when PCG stops at the iteration limit without converging."""

    pass


class SimulationStepError(SolverError):
    """Raised when a time step fails; carries the step index and subdomain."""

    def __init__(self, message: str, step: int, subdomain: str | None = None) -> None:
        self.step = step
        self.subdomain = subdomain
        where = f" (subdomain {subdomain})" if subdomain else ""
        super().__init__(f"step {step}{where}: {message}")


class VerificationError(PoroFetiError):
    """Raised when an error norm or study cannot be computed."""

    pass


class EmptySnapshotError(VerificationError):
    """Raised when a time-norm is requested over no snapshots."""

    pass


class AcceptanceError(PoroFetiError):
    """Raised when a benchmark acceptance check fails."""

    pass


class OutputError(PoroFetiError):
    """Raised when an output artifact cannot be written; carries the path."""

    def __init__(self, message: str, path: Path | str) -> None:
        self.path = Path(path)
        super().__init__(f"{message}: {self.path}")
