#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Initial creation of ui module
#

"""
User interface module for poro-feti.

This module contains the terminal output helpers.
"""

from .display import (
    format_order,
    format_step_line,
    print_error_table,
    print_oscillation_summary,
    print_step_line,
    use_color,
    GREEN,
    RED,
    RESET,
    YELLOW,
    BLUE,
    DIM,
)

__all__ = [
    "format_order",
    "format_step_line",
    "print_error_table",
    "print_oscillation_summary",
    "print_step_line",
    "use_color",
    "GREEN",
    "RED",
    "RESET",
    "YELLOW",
    "BLUE",
    "DIM",
]
