#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - JSON encoder for numpy scalars, arrays and enums in report files
#

"""
JSON encoding of numerical report data.
"""

from __future__ import annotations

import json
import math
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np

__all__ = ["NumpyEncoder", "dump_json"]


class NumpyEncoder(json.JSONEncoder):
    """JSON encoder that understands numpy values, enums and paths.

    Non-finite floats are written as null so the files stay valid JSON.
    """

    def default(self, obj: Any) -> Any:
        if isinstance(obj, np.ndarray):
            return [self._process_item(v) for v in obj.tolist()]
        if isinstance(obj, np.generic):
            return self._process_item(obj.item())
        if isinstance(obj, Enum):
            return obj.value
        if isinstance(obj, Path):
            return str(obj)
        return super().default(obj)

    def iterencode(self, obj: Any, _one_shot: bool = False) -> Any:
        return super().iterencode(self._process_item(obj), _one_shot)

    def _process_item(self, obj: Any) -> Any:
        """Recursively replace non-finite floats by None."""
        if isinstance(obj, float) and not math.isfinite(obj):
            return None
        if isinstance(obj, dict):
            return {k: self._process_item(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [self._process_item(item) for item in obj]
        return obj


def dump_json(data: Any, path: Path) -> Path:
    """Write ``data`` with sorted keys and a trailing newline."""
    path.write_text(json.dumps(data, cls=NumpyEncoder, indent=2, sort_keys=True, allow_nan=False) + "\n", encoding="utf-8")
    return path
