#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Initial creation of parser_modules submodule package
#

"""
Parser modules for the poro-feti CLI.
"""

from .run_config import CONFIG_KEYS, RunConfig, emit_config, parse_config

__all__ = ["CONFIG_KEYS", "RunConfig", "emit_config", "parse_config"]
