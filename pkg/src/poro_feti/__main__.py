#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Module entry point delegating to the CLI
#

"""
Entry point for ``python -m poro_feti``, for example ``python -m poro_feti solve --mesh 16``.
"""

from .cli.parser import main_cli

if __name__ == "__main__":
    main_cli()
