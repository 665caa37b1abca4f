#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Script name and default file names shared by the CLI and workflow layers
#

"""
Configuration constants for poro-feti.

Kept separate from ``constants`` so the CLI can import it without pulling in
the numerical modules.
"""

from typing import Final

SCRIPT_NAME: Final[str] = "poro-feti - FETI solver for coupled poroelasticity and elasticity"
DEFAULT_CONFIG_FILE: Final[str] = "poro_feti.cfg"
DEFAULT_OUTPUT_DIR: Final[str] = "output"
CONFIG_COMMENT_PREFIX: Final[str] = "#"

__all__ = [
    "SCRIPT_NAME",
    "DEFAULT_CONFIG_FILE",
    "DEFAULT_OUTPUT_DIR",
    "CONFIG_COMMENT_PREFIX",
]
