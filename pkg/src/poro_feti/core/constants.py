#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Initial collection of numerical tolerances, solver defaults and benchmark parameters
# - Organized constants by category for better readability
#

"""
Constants used throughout poro-feti.

Grouped by purpose: geometric tolerances, solver defaults, benchmark
parameters, output naming and process exit codes.
"""

from typing import Final

# Geometric tolerances
COORDINATE_TOLERANCE: Final[float] = 1e-12  # Absolute distance under which two nodes coincide
DEGENERATE_AREA_TOLERANCE: Final[float] = 1e-14  # Triangles or edges below this measure are rejected
BARYCENTRIC_TOLERANCE: Final[float] = 1e-12  # Slack when testing points against the reference triangle

# Quadrature
ELEMENT_QUADRATURE_DEGREE: Final[int] = 4  # Exact for P2 x P2 products on affine triangles
MAX_QUADRATURE_DEGREE: Final[int] = 4
EDGE_QUADRATURE_POINTS: Final[int] = 3  # Gauss-Legendre, exact to degree 5

# Solver defaults
DEFAULT_PCG_TOLERANCE: Final[float] = 1e-8  # Relative preconditioned residual
DEFAULT_MAX_ITERATIONS: Final[int] = 500
BREAKDOWN_TOLERANCE: Final[float] = 1e-14  # <p, Kp> <= this * ||p||^2 means indefinite
RIGID_MODE_TOLERANCE: Final[float] = 1e-10  # ||M r|| relative to ||M|| ||r|| for a floating subdomain
SUBDOMAIN_WORKERS: Final[int] = 2
SINGULARITY_TRIAL_SEED: Final[int] = 20240917

# Finite element orders
DEFAULT_DISPLACEMENT_ORDER: Final[int] = 2
SCALAR_ORDER: Final[int] = 1
SUPPORTED_DISPLACEMENT_ORDERS: Final[tuple[int, ...]] = (1, 2)
SUPPORTED_SCALAR_ORDERS: Final[tuple[int, ...]] = (1,)

# Material parameters of the manufactured-solution and benchmark runs
DEFAULT_YOUNG_MODULUS: Final[float] = 1e4
DEFAULT_POISSON_RATIO: Final[float] = 0.2
DEFAULT_BIOT_WILLIS: Final[float] = 1.0
DEFAULT_STORAGE_COEFFICIENT: Final[float] = 0.1
DEFAULT_FLUID_VISCOSITY: Final[float] = 1.0
DEFAULT_FLUID_DENSITY: Final[float] = 0.0

# Geometry of the unit-square top-bottom layout
INTERFACE_HEIGHT: Final[float] = 0.5
DOMAIN_WIDTH: Final[float] = 1.0
DOMAIN_HEIGHT: Final[float] = 1.0

# Time horizons
MMS_FINAL_TIME: Final[float] = 1e-2
MMS_TIME_STEP: Final[float] = 1e-4
BARRY_MERCER_FINAL_TIME: Final[float] = 1.0
BARRY_MERCER_TIME_STEP: Final[float] = 1e-2
BARRY_MERCER_LOAD_START: Final[float] = 0.2  # Loaded segment of the bottom edge
BARRY_MERCER_LOAD_END: Final[float] = 0.8

# Convergence study defaults
DEFAULT_MESH_SIZES: Final[tuple[int, ...]] = (8, 16, 24, 32)
DEFAULT_POISSON_SWEEP: Final[tuple[float, ...]] = (0.2, 0.49, 0.499, 0.4999)
DEFAULT_MESH_SUBDIVISIONS: Final[int] = 8
OSCILLATION_BOUND_FRACTION: Final[float] = 0.05  # Of max |p_2|
# Accepted observed orders (displacement, pressure) between the coarsest and finest mesh
ORDER_WINDOWS: Final[dict[int, tuple[tuple[float, float], tuple[float, float]]]] = {
    2: ((2.5, float("inf")), (1.5, float("inf"))),
    1: ((1.5, 3.5), (1.5, 3.5)),
}

# Output naming
SNAPSHOT_FILE_PATTERN: Final[str] = "step_{:06d}.vtk"
SOLVER_LOG_FILE: Final[str] = "solver_log.csv"
CONVERGENCE_TABLE_FILE: Final[str] = "convergence.csv"
OSCILLATION_REPORT_FILE: Final[str] = "oscillation.json"
BLOCK_DUMP_DIR: Final[str] = "blocks"
SOLVER_LOG_HEADER: Final[tuple[str, ...]] = ("step", "variant", "iterations", "residual", "time_P", "time_E")
CONVERGENCE_TABLE_HEADER: Final[tuple[str, ...]] = ("nu", "h", "err_u", "order_u", "err_p", "order_p")

# Process exit codes
EXIT_SUCCESS: Final[int] = 0
EXIT_SOLVER_FAILURE: Final[int] = 1
EXIT_CONFIG_ERROR: Final[int] = 2
EXIT_ACCEPTANCE_FAILURE: Final[int] = 3
