#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Matrix-market dump of every assembled block
#

"""
Offline inspection of the assembled blocks.
"""

from __future__ import annotations

from pathlib import Path

import scipy.io

from ..core.exceptions import OutputError
from ..core.types import LoggerType
from .blocks import BlockSystem

__all__ = ["dump_blocks"]


def dump_blocks(system: BlockSystem, directory: Path, logger: LoggerType = None) -> list[Path]:
    """Write A_P, B_P, R_P, H_P, A_f, A_E, B_E, R_E, H_E as ``<name>.mtx``.

    Args:
        system: Assembled system
        directory: Target directory, created if missing
        logger: Optional logger

    Returns:
        Written paths

    Raises:
        OutputError: If a file cannot be written
    """
    written: list[Path] = []
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OutputError(f"cannot create dump directory ({e})", directory) from e
    for blocks in (system.poro, system.elastic):
        for name, matrix in blocks.named_blocks().items():
            path = directory / f"{name}.mtx"
            try:
                scipy.io.mmwrite(str(path), matrix.tocoo())
            except OSError as e:
                raise OutputError(f"cannot write {name} ({e})", path) from e
            written.append(path)
    if logger:
        logger.info(f"Wrote {len(written)} blocks to {directory}")
    return written
