#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Initial creation for utils module exports
#

"""
Utility modules for poro-feti.

Run artifacts (VTK, CSV, JSON) are written by ``utils.outputs``, which is not
re-exported here so the CLI can check for meshio before importing it.
"""

# Logging
from .logger import get_logger

# JSON handling
from .json_handlers import NumpyEncoder, dump_json

__all__ = [
    # Logging
    "get_logger",
    # JSON handling
    "NumpyEncoder",
    "dump_json",
]
