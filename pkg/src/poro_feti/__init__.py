#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE CODE:
# - Initial package structure for poro_feti
# - Export main CLI function for entry point
#

"""poro-feti - FETI domain decomposition for coupled poroelasticity and elasticity."""

from typing import Final

__version__: Final[str] = "0.1.0"

from .cli.parser import main_cli as main

__all__ = ["main"]
