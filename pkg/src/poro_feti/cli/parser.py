#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - main_cli: parse, resolve the config and dispatch to the command flows
# - Domain errors mapped to exit codes 1, 2 and 3
#

"""
Command-line interface parser for poro-feti.

This module provides the main CLI entry point.
"""

from __future__ import annotations

import sys
from typing import Callable

from ..core.config import SCRIPT_NAME
from ..core.constants import EXIT_ACCEPTANCE_FAILURE, EXIT_CONFIG_ERROR, EXIT_SOLVER_FAILURE
from ..core.exceptions import AcceptanceError, ConfigError, PoroFetiError, SimulationStepError
from ..core.types import Command
from ..ui.display import BLUE, RED, RESET, YELLOW
from ..utils.logger import get_logger

# Import from parser submodules
from .parser_modules.dependency_checker import check_required_dependencies
from .parser_modules.argument_parser import create_argument_parser
from .parser_modules.argument_processor import process_arguments
from .parser_modules.run_config import RunConfig

__all__ = ["main_cli", "exit_code_for"]


def exit_code_for(error: PoroFetiError) -> int:
    """Process exit code of a domain error."""
    if isinstance(error, ConfigError):
        return EXIT_CONFIG_ERROR
    if isinstance(error, AcceptanceError):
        return EXIT_ACCEPTANCE_FAILURE
    return EXIT_SOLVER_FAILURE


def _describe(command: Command, error: PoroFetiError) -> str:
    context = [f"command {command.value}"]
    if isinstance(error, SimulationStepError):
        context.append(f"step {error.step}")
        if error.subdomain is not None:
            context.append(f"subdomain {error.subdomain}")
    return f"{type(error).__name__} ({', '.join(context)}): {error}"


def main_cli(argv: list[str] | None = None) -> None:
    """Main CLI entry point for poro-feti.

    Exits with 0 on success, 1 on solver or output failure, 2 on a
    configuration error and 3 when an acceptance check fails.
    """
    check_required_dependencies()

    parser = create_argument_parser()
    args = parser.parse_args(argv)

    if not args.quiet:
        print(f"{BLUE}{SCRIPT_NAME}{RESET}")

    command, config = process_arguments(args, get_logger(bool(args.verbose), bool(args.quiet)))

    # Import flows here so that --help and config errors never start Prefect
    from ..workflow.flows import barry_mercer_flow, converge_flow, solve_flow

    flows: dict[Command, Callable[[RunConfig], int]] = {
        Command.SOLVE: solve_flow,
        Command.CONVERGE: converge_flow,
        Command.BARRY_MERCER: barry_mercer_flow,
    }
    try:
        code = flows[command](config)
    except PoroFetiError as e:
        sys.stderr.write(f"{RED}Error: {_describe(command, e)}{RESET}\n")
        sys.exit(exit_code_for(e))
    except KeyboardInterrupt:
        sys.stderr.write(f"\n{YELLOW}Interrupted.{RESET}\n")
        sys.exit(EXIT_SOLVER_FAILURE)
    sys.exit(code)
