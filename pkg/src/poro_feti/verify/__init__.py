#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Initial creation for verification exports
#

"""
Error norms, convergence studies and oscillation checks.
"""

from .norms import l2_error, linf_l2_error, state_errors
from .convergence import (
    ErrorRow,
    ErrorTable,
    RowFailure,
    RowRunner,
    StudySettings,
    compute_error_row,
    convergence_study,
    estimate_order,
    order_window_violations,
    overall_orders,
    with_orders,
)
from .oscillation import (
    OscillationMonitor,
    OscillationReport,
    boundary_pressure_ceiling,
    oscillation_check,
    peak_on_loaded_segment,
    pressure_peak_location,
)

__all__ = [
    # Norms
    "l2_error",
    "linf_l2_error",
    "state_errors",
    # Convergence
    "ErrorRow",
    "ErrorTable",
    "RowFailure",
    "RowRunner",
    "StudySettings",
    "compute_error_row",
    "convergence_study",
    "estimate_order",
    "order_window_violations",
    "overall_orders",
    "with_orders",
    # Oscillation
    "OscillationMonitor",
    "OscillationReport",
    "boundary_pressure_ceiling",
    "oscillation_check",
    "peak_on_loaded_segment",
    "pressure_peak_location",
]
