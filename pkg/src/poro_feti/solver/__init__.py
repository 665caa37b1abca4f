#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Initial creation for solver module exports
#

"""
FETI interface solvers, subdomain factorizations and the monolithic reference solve.
"""

# Factorizations
from .factorization import (
    SubdomainFactorization,
    SchurComplement,
    backward_error,
    factor_matrix,
    factor_subdomain,
    interface_dofs,
    schur_complement,
)

# Interface operators
from .operators import (
    FetiOperator,
    build_feti_operator,
    feti_rhs,
    materialize,
    operator_apply,
    preconditioner_apply,
)

# Iteration and recovery
from .pcg import PcgReport, feti_pcg
from .back_substitution import back_substitute, interface_jump
from .monolithic import MonolithicFactorization, factor_monolithic, monolithic_matrix, monolithic_solve
from .parallel import SubdomainExecutor

__all__ = [
    # Factorizations
    "SubdomainFactorization",
    "SchurComplement",
    "backward_error",
    "factor_matrix",
    "factor_subdomain",
    "interface_dofs",
    "schur_complement",
    # Interface operators
    "FetiOperator",
    "build_feti_operator",
    "feti_rhs",
    "materialize",
    "operator_apply",
    "preconditioner_apply",
    # Iteration and recovery
    "PcgReport",
    "feti_pcg",
    "back_substitute",
    "interface_jump",
    "MonolithicFactorization",
    "factor_monolithic",
    "monolithic_matrix",
    "monolithic_solve",
    "SubdomainExecutor",
]
