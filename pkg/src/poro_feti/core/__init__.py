#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Initial creation for core module exports
# - Re-exports exceptions and types used across subpackages
#

"""
Core module containing constants, exceptions, and type definitions.
"""

# Re-export all exceptions
from .exceptions import (
    PoroFetiError,
    ConfigError,
    MeshError,
    InvalidSubdivisionError,
    UntaggedFacetError,
    NonConformingInterfaceError,
    EmptyInterfaceError,
    UnsupportedOrderError,
    QuadratureDegreeError,
    DegenerateElementError,
    ParameterError,
    AssemblyError,
    DimensionMismatchError,
    MissingBoundaryDataError,
    ConstraintError,
    SolverError,
    SingularSubproblemError,
    IndefiniteOperatorError,
    SolverConvergenceError,
    SimulationStepError,
    VerificationError,
    EmptySnapshotError,
    AcceptanceError,
    OutputError,
)

# Re-export all types
from .types import (
    LoggerType,
    FloatArray,
    IntArray,
    ScalarField,
    VectorField,
    SubdomainId,
    BoundaryLabel,
    BoundaryKind,
    FieldKind,
    FormKind,
    SolverKind,
    ScenarioName,
    MuConvention,
    RetentionPolicy,
    Command,
)

__all__ = [
    # Exceptions
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
    # Types
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
