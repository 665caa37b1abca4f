#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Color codes and progress lines for time steps
# - Box-drawn error table and run summaries
#

"""
Display utilities for poro-feti.

Everything printed to the terminal goes through this module.
"""

from __future__ import annotations

import logging
import os
from typing import TYPE_CHECKING, Final, Sequence

if TYPE_CHECKING:
    from ..solver.pcg import PcgReport
    from ..verify.convergence import ErrorRow
    from ..verify.oscillation import OscillationReport

# Color codes
GREEN: Final[str] = "\033[92m"
RED: Final[str] = "\033[91m"
RESET: Final[str] = "\033[0m"
YELLOW: Final[str] = "\033[93m"
BLUE: Final[str] = "\033[94m"
DIM: Final[str] = "\033[2m"

__all__ = [
    "format_step_line",
    "print_step_line",
    "format_order",
    "print_error_table",
    "print_oscillation_summary",
    "use_color",
    # Export color codes
    "GREEN",
    "RED",
    "RESET",
    "YELLOW",
    "BLUE",
    "DIM",
]


def use_color() -> bool:
    return "NO_COLOR" not in os.environ


def _paint(text: str, color: str) -> str:
    return f"{color}{text}{RESET}" if use_color() else text


def format_step_line(step: int, t: float, report: PcgReport) -> str:
    """One progress line: step, time, iterations and residual."""
    line = f"step {step:6d}  t={t:.6g}  iters={report.iterations:4d}  residual={report.relative_residual:.3e}"
    if not report.converged:
        line += "  " + _paint("NOT CONVERGED", RED)
    return line


def print_step_line(step: int, t: float, report: PcgReport) -> None:
    print(format_step_line(step, t, report))


def format_order(order: float | None) -> str:
    return "-" if order is None else f"{order:.2f}"


def print_error_table(
    rows: Sequence[ErrorRow],
    logger: logging.Logger | logging.LoggerAdapter[logging.Logger],
) -> None:
    """Print the convergence table as a box.

    Args:
        rows: Table rows, grouped by nu
        logger: Logger instance
    """
    if not rows:
        logger.info("Convergence table is empty.")
        return

    headers = ("nu", "h", "err_u", "order_u", "err_p", "order_p")
    cells = [
        (f"{r.nu:g}", f"1/{round(1.0 / r.h)}", f"{r.err_u:.4e}", format_order(r.order_u), f"{r.err_p:.4e}", format_order(r.order_p))
        for r in rows
    ]
    widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(headers)]

    def bar(left: str, mid: str, right: str) -> str:
        return left + mid.join("━" * (w + 2) for w in widths) + right

    print(f"\n{_paint('Errors in the discrete L-infinity(L2) norm:', YELLOW)}")
    print(bar("┏", "┳", "┓"))
    print("┃" + "┃".join(f" {h.center(w)} " for h, w in zip(headers, widths)) + "┃")
    print(bar("┣", "╋", "┫"))
    for c in cells:
        print("┃" + "┃".join(f" {v.rjust(w)} " for v, w in zip(c, widths)) + "┃")
    print(bar("┗", "┻", "┛"))


def print_oscillation_summary(report: OscillationReport, peak: tuple[float, float] | None = None) -> None:
    status = _paint("PASS", GREEN) if report.passed else _paint("FAIL", RED)
    print(f"Oscillation check: {status}  min p={report.min_value:.4e}  max p={report.max_value:.4e}  band=[{-report.bound:.3e}, {report.ceiling + report.bound:.3e}]")
    if not report.passed:
        print(f"  worst violation {report.worst_violation:.4e} at step {report.worst_step}")
    if peak is not None:
        print(f"  pressure peak at x={peak[0]:.4f}, y={peak[1]:.4f}")
