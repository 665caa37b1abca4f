#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Initial creation for assembly module exports
#

"""
Global sparse blocks, interface coupling, Dirichlet constraints and step loads.
"""

from .blocks import (
    SaddleLayout,
    SubdomainBlocks,
    BlockSystem,
    scatter_matrix,
    saddle_layout,
    assemble_subdomain_blocks,
    assemble_block_system,
    rigid_body_modes,
    coupled_matrix,
)
from .interface import assemble_interface, multiplier_trace_nodes
from .constraints import FieldConstraint, ConstraintSet, build_constraints, apply_constraints, constrain_rhs, prescribed_vector
from .loads import StepLoads, assemble_rhs_step, saddle_rhs, body_load, source_load
from .dump import dump_blocks

__all__ = [
    # Blocks
    "SaddleLayout",
    "SubdomainBlocks",
    "BlockSystem",
    "scatter_matrix",
    "saddle_layout",
    "assemble_subdomain_blocks",
    "assemble_block_system",
    "rigid_body_modes",
    "coupled_matrix",
    # Interface
    "assemble_interface",
    "multiplier_trace_nodes",
    # Constraints
    "FieldConstraint",
    "ConstraintSet",
    "build_constraints",
    "apply_constraints",
    "constrain_rhs",
    "prescribed_vector",
    # Loads
    "StepLoads",
    "assemble_rhs_step",
    "saddle_rhs",
    "body_load",
    "source_load",
    # Output
    "dump_blocks",
]
