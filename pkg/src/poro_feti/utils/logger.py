#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Logger setup with Prefect run-logger integration
# - Quiet mode raises the run logger and the stdlib fallback to WARNING
#

"""
Logger configuration utilities for poro-feti.

Inside a Prefect flow or task run the run logger is used, so solver messages
show up in the flow's log. Outside of a run a plain ``poro_feti`` logger with
one console handler is returned.
"""

from __future__ import annotations

import logging
from typing import Union

__all__ = ["get_logger"]


def get_logger(
    verbose_mode: bool = False,
    quiet_mode: bool = False,
) -> Union[logging.Logger, logging.LoggerAdapter[logging.Logger]]:
    """Get logger with appropriate configuration.

    Args:
        verbose_mode: Whether to enable verbose (DEBUG) logging
        quiet_mode: Whether to log warnings and errors only

    Returns:
        Logger instance (standard or Prefect's context logger)
    """
    level = logging.DEBUG if verbose_mode else logging.WARNING if quiet_mode else logging.INFO
    try:
        from prefect import get_run_logger
        from prefect.exceptions import MissingContextError

        try:
            logger: Union[logging.Logger, logging.LoggerAdapter[logging.Logger]] = get_run_logger()
            if verbose_mode or quiet_mode:
                logger.setLevel(level)
            return logger
        except MissingContextError:
            pass
    except ImportError:
        pass

    logger = logging.getLogger("poro_feti")
    logger.setLevel(level)
    if not logger.handlers:
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(logging.Formatter("%(levelname)s - %(message)s"))
        logger.addHandler(console_handler)
    return logger
