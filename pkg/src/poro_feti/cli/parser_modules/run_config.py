#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - RunConfig with documented defaults
# - Flat key = value config files read and written through configparser
# - Defaults < file < flags merge with validation
#

"""
Run configuration for the poro-feti CLI.

Config files are flat ``key = value`` text, ``#`` starts a comment. Keys are
the long flag names with dashes replaced by underscores, for example::

    mesh = 16
    fe_order = 1
    solver = feti-schur
    nus = 0.2, 0.4999
"""

from __future__ import annotations

import configparser
import dataclasses
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Callable, Final, Mapping

from ...core.config import CONFIG_COMMENT_PREFIX, DEFAULT_OUTPUT_DIR
from ...core.constants import (
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_MESH_SIZES,
    DEFAULT_MESH_SUBDIVISIONS,
    DEFAULT_PCG_TOLERANCE,
    DEFAULT_POISSON_SWEEP,
    SUPPORTED_DISPLACEMENT_ORDERS,
)
from ...core.exceptions import ConfigError
from ...core.types import LoggerType, MuConvention, RetentionPolicy, ScenarioName, SolverKind

__all__ = ["RunConfig", "CONFIG_KEYS", "parse_config", "emit_config", "read_config_file"]

_SECTION: Final[str] = "run"


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved settings of one CLI run.

    ``None`` for nu, E, dt and T means the scenario default.
    """

    scenario: ScenarioName = ScenarioName.MMS
    mesh: int = DEFAULT_MESH_SUBDIVISIONS
    fe_order: int = 2
    nu: float | None = None
    E: float | None = None
    dt: float | None = None
    T: float | None = None
    solver: SolverKind = SolverKind.FETI_GENERALIZED
    tol: float = DEFAULT_PCG_TOLERANCE
    max_iters: int = DEFAULT_MAX_ITERATIONS
    out: Path = Path(DEFAULT_OUTPUT_DIR)
    stride: int = 1
    mesh_sizes: tuple[int, ...] = DEFAULT_MESH_SIZES
    nus: tuple[float, ...] = DEFAULT_POISSON_SWEEP
    mu_convention: MuConvention = MuConvention.UNHALVED
    retain: RetentionPolicy = RetentionPolicy.FULL
    concurrent: bool = False
    dump_blocks: bool = False
    quiet: bool = False
    verbose: bool = False


CONFIG_KEYS: Final[tuple[str, ...]] = tuple(f.name for f in fields(RunConfig))


def _boolean(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text not in configparser.ConfigParser.BOOLEAN_STATES:
        raise ValueError(f"not a boolean: {value!r}")
    return configparser.ConfigParser.BOOLEAN_STATES[text]


def _sequence(item: Callable[[Any], Any]) -> Callable[[Any], tuple[Any, ...]]:
    def convert(value: Any) -> tuple[Any, ...]:
        if isinstance(value, str):
            parts = [p.strip() for p in value.split(",") if p.strip()]
        else:
            parts = list(value)
        return tuple(item(p) for p in parts)

    return convert


def _optional_float(value: Any) -> float | None:
    if value is None or (isinstance(value, str) and value.strip().lower() in ("", "none")):
        return None
    return float(value)


_CONVERTERS: Final[Mapping[str, Callable[[Any], Any]]] = {
    "scenario": ScenarioName,
    "mesh": int,
    "fe_order": int,
    "nu": _optional_float,
    "E": _optional_float,
    "dt": _optional_float,
    "T": _optional_float,
    "solver": SolverKind,
    "tol": float,
    "max_iters": int,
    "out": Path,
    "stride": int,
    "mesh_sizes": _sequence(int),
    "nus": _sequence(float),
    "mu_convention": MuConvention,
    "retain": RetentionPolicy,
    "concurrent": _boolean,
    "dump_blocks": _boolean,
    "quiet": _boolean,
    "verbose": _boolean,
}


def _convert(key: str, value: Any) -> Any:
    if key not in _CONVERTERS:
        raise ConfigError(f"unknown config key '{key}'; valid keys: {', '.join(CONFIG_KEYS)}")
    try:
        return _CONVERTERS[key](value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"invalid value for '{key}': {value!r} ({e})") from e


def _validate(config: RunConfig) -> None:
    def positive(name: str, value: float | None) -> None:
        if value is not None and not value > 0:
            raise ConfigError(f"'{name}' must be positive, got {value}")

    if config.fe_order not in SUPPORTED_DISPLACEMENT_ORDERS:
        raise ConfigError(f"'fe_order' must be one of {SUPPORTED_DISPLACEMENT_ORDERS}, got {config.fe_order}")
    for name in ("mesh", "max_iters", "stride", "tol", "E", "dt", "T"):
        positive(name, getattr(config, name))
    if config.nu is not None and not 0.0 <= config.nu < 0.5:
        raise ConfigError(f"'nu' must lie in [0, 0.5), got {config.nu}")
    if not config.mesh_sizes or any(n < 1 for n in config.mesh_sizes):
        raise ConfigError(f"'mesh_sizes' must be positive integers, got {config.mesh_sizes}")
    if not config.nus or any(not 0.0 <= nu < 0.5 for nu in config.nus):
        raise ConfigError(f"'nus' must lie in [0, 0.5), got {config.nus}")
    if config.dt is not None and config.T is not None and config.dt > config.T:
        raise ConfigError(f"'dt' ({config.dt}) exceeds 'T' ({config.T})")


def read_config_file(path: Path) -> dict[str, str]:
    """Raw key/value pairs of a config file.

    Raises:
        ConfigError: If the file is missing or malformed
    """
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser(comment_prefixes=(CONFIG_COMMENT_PREFIX,), inline_comment_prefixes=(CONFIG_COMMENT_PREFIX,), interpolation=None)
    parser.optionxform = str  # type: ignore[assignment,method-assign]
    try:
        parser.read_string(f"[{_SECTION}]\n" + path.read_text(encoding="utf-8"), source=str(path))
    except (configparser.Error, OSError, UnicodeDecodeError) as e:
        raise ConfigError(f"cannot read config file {path}: {e}") from e
    return dict(parser[_SECTION])


def parse_config(
    path: Path | None = None,
    overrides: Mapping[str, Any] | None = None,
    logger: LoggerType = None,
) -> RunConfig:
    """Merge defaults, a config file and flag overrides (flags win).

    Args:
        path: Optional config file
        overrides: Flag values; ``None`` entries are ignored
        logger: Optional logger; the resolved config is echoed at INFO

    Returns:
        Validated RunConfig

    Raises:
        ConfigError: On unknown keys, malformed values or failed validation
    """
    values: dict[str, Any] = {}
    if path is not None:
        values.update({k: _convert(k, v) for k, v in read_config_file(path).items()})
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = _convert(key, value)
    config = dataclasses.replace(RunConfig(), **values)
    _validate(config)
    if logger:
        logger.info("Resolved configuration: " + ", ".join(f"{k}={_format(getattr(config, k))}" for k in CONFIG_KEYS))
    return config


def _format(value: Any) -> str:
    if isinstance(value, tuple):
        return ", ".join(repr(v) if isinstance(v, float) else str(v) for v in value)
    if hasattr(value, "value"):
        return str(value.value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_config(config: RunConfig, path: Path | None = None) -> str:
    """Serialize ``config`` in the file format that ``parse_config`` reads.

    Args:
        config: Configuration to write
        path: Write the text there as well when given

    Returns:
        The file text
    """
    lines = [f"{CONFIG_COMMENT_PREFIX} poro-feti run configuration"]
    for key in CONFIG_KEYS:
        value = getattr(config, key)
        if value is not None:
            lines.append(f"{key} = {_format(value)}")
    text = "\n".join(lines) + "\n"
    if path is not None:
        path.write_text(text, encoding="utf-8")
    return text
