#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Turn parsed flags into a validated RunConfig
# - Config errors reported in red with exit code 2
# - poro_feti.cfg in the working directory used when --config is absent
#

"""
Argument processor for the poro-feti CLI.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any

from ...core.config import DEFAULT_CONFIG_FILE
from ...core.constants import EXIT_CONFIG_ERROR
from ...core.exceptions import ConfigError
from ...core.types import Command, LoggerType
from ...ui.display import RED, RESET
from .run_config import CONFIG_KEYS, RunConfig, parse_config

__all__ = ["process_arguments", "collect_overrides"]


def collect_overrides(args: argparse.Namespace) -> dict[str, Any]:
    """Flag values keyed by config key; flags left unset are omitted."""
    return {key: getattr(args, key) for key in CONFIG_KEYS if getattr(args, key, None) is not None}


def process_arguments(args: argparse.Namespace, logger: LoggerType = None) -> tuple[Command, RunConfig]:
    """Process and validate parsed arguments.

    Args:
        args: Parsed arguments from argparse
        logger: Optional logger for the resolved-config echo

    Returns:
        Tuple of (command, resolved configuration)
    """
    config_path = Path(args.config) if args.config else None
    # A config file in the working directory is picked up when --config is absent
    if config_path is None and Path(DEFAULT_CONFIG_FILE).is_file():
        config_path = Path(DEFAULT_CONFIG_FILE)
    try:
        config = parse_config(config_path, collect_overrides(args), logger)
    except ConfigError as e:
        sys.stderr.write(f"{RED}Error: {e}{RESET}\n")
        sys.exit(EXIT_CONFIG_ERROR)
    return Command(args.command), config
