"""Classical reference implementations used by the test suite.

Taking logs turns every geometric computation in this package into an
ordinary one, so a textbook algorithm run on (ln x_i, ln f_i) is an
independent oracle: the exponential of its output must match the geometric
module's output entry for entry.  These functions exist to catch drift and
are not part of the package's public interface.
"""

from __future__ import annotations

import math
from typing import Sequence

from .gdiff import DuplicateNodes, GTable

__all__ = [
    "to_log_table",
    "classical_newton_dd",
    "classical_newton_interp",
    "classical_lagrange",
    "classical_forward_diffs",
    "classical_newton_forward",
]

_MIN_GAP = 1e-12

Point = tuple[float, float]


def to_log_table(table: GTable) -> list[Point]:
    """Map each node (x, f) to (ln x, ln f)."""
    return [(x.logval, f.logval) for x, f in table.nodes]


def _check_distinct(us: Sequence[float]):
    for i in range(len(us)):
        for j in range(i + 1, len(us)):
            if abs(us[i] - us[j]) < _MIN_GAP:
                raise DuplicateNodes(f"abscissae {i} and {j} coincide")


def classical_newton_dd(points: Sequence[Point]) -> list[list[float]]:
    """Ordinary divided-difference triangle; rows[k] holds the order-k entries."""
    us = [p[0] for p in points]
    _check_distinct(us)
    rows = [[p[1] for p in points]]
    for k in range(1, len(points)):
        prev = rows[-1]
        rows.append([(prev[i + 1] - prev[i]) / (us[i + k] - us[i]) for i in range(len(prev) - 1)])
    return rows


def classical_newton_interp(points: Sequence[Point], u: float) -> float:
    """Newton-form polynomial value at u from the divided-difference table."""
    rows = classical_newton_dd(points)
    us = [p[0] for p in points]
    total = rows[0][0]
    gap_product = 1.0
    for k in range(1, len(points)):
        gap_product *= u - us[k - 1]
        total += gap_product * rows[k][0]
    return total


def classical_lagrange(points: Sequence[Point], u: float) -> float:
    """Ordinary Lagrange interpolation value at u."""
    us = [p[0] for p in points]
    _check_distinct(us)
    total = 0.0
    for i, (ui, yi) in enumerate(points):
        weight = 1.0
        for j, uj in enumerate(us):
            if j != i:
                weight *= (u - uj) / (ui - uj)
        total += weight * yi
    return total


def classical_forward_diffs(values: Sequence[float]) -> list[list[float]]:
    """Ordinary forward-difference triangle of equally spaced samples."""
    rows = [list(values)]
    for _ in range(len(values) - 1):
        prev = rows[-1]
        rows.append([prev[i + 1] - prev[i] for i in range(len(prev) - 1)])
    return rows


def classical_newton_forward(values: Sequence[float], t: float) -> float:
    """Ordinary forward-difference interpolation at fractional index t."""
    diffs = classical_forward_diffs(values)
    total = values[0]
    factor = 1.0
    for k in range(1, len(values)):
        factor *= (t - (k - 1)) / k
        total += factor * diffs[k][0]
    return total


def central_log_derivative(g, v: float, u: float) -> float:
    """Symmetric difference quotient of g, with the realised spacing."""
    vp, vm = v + u, v - u
    return (g(vp) - g(vm)) / (vp - vm)


def high_precision_sin(x: float, terms: int = 40) -> float:
    """Taylor-series sine, an arithmetic path independent of math.sin."""
    x = math.fmod(x, 2.0 * math.pi)
    total = 0.0
    term = x
    for k in range(terms):
        total += term
        term *= -x * x / ((2 * k + 2) * (2 * k + 3))
    return total
