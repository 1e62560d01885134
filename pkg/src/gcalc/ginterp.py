"""Geometric interpolation.

Three equivalent engines: the Newton divided-difference form for arbitrary
distinct nodes, the forward-difference form for geometrically uniform
grids, and the Lagrange basis form.  All accumulate in the log domain, so
each is the exponential of its classical counterpart applied to the logs
of the data.  The exact remainder completes any of them to the true value
when the true value is known.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .garith import (
    GEOMETRIC_IDENTITY,
    GNum,
    _coerce,
    gadd,
    gdiv,
    gfactorial,
    gmul,
    gsub,
)
from .gdiff import GTable, UniformGrid, divided_table, forward_table

__all__ = [
    "InterpReport",
    "interp_divided",
    "interp_newton_forward",
    "interp_lagrange",
    "remainder",
    "divided_report",
    "newton_forward_report",
    "lagrange_report",
]


@dataclass(frozen=True)
class InterpReport:
    """An interpolated value with its per-term breakdown.

    ``terms`` are the geometric summands in accumulation order (their
    ordinary product is the value).  ``weights`` carries the log-domain
    basis weights for the Lagrange form and is None otherwise.
    ``extrapolated`` flags an evaluation point outside the node range.
    """

    value: GNum
    terms: tuple[GNum, ...]
    weights: tuple[float, ...] | None
    extrapolated: bool


def _is_outside(logs, lx: float) -> bool:
    return lx < min(logs) or lx > max(logs)


def divided_report(table: GTable, x) -> InterpReport:
    """Newton divided-difference interpolation with per-term detail.

    Value is f(x_0) (+) sum of [product of (x (-) x_j), j < k] (.) dd_k
    over the top-edge divided differences dd_k.  Reproduces nodal values
    exactly: at x = x_k every later term carries a zero-log gap factor.
    """
    if len(table) < 2:
        raise ValueError("interpolation needs at least 2 nodes")
    x = _coerce(x)
    xs = table.xs
    top = divided_table(table).top_edge()
    terms = [top[0]]
    acc = top[0]
    gap_product = GEOMETRIC_IDENTITY
    for k in range(1, len(top)):
        gap_product = gmul(gap_product, gsub(x, xs[k - 1]))
        term = gmul(gap_product, top[k])
        terms.append(term)
        acc = gadd(acc, term)
    return InterpReport(
        value=acc,
        terms=tuple(terms),
        weights=None,
        extrapolated=_is_outside([n.logval for n in xs], x.logval),
    )


def interp_divided(table: GTable, x) -> GNum:
    """Newton divided-difference interpolation at x."""
    return divided_report(table, x).value


def newton_forward_report(grid: UniformGrid, x) -> InterpReport:
    """Forward-difference interpolation on a uniform grid, with detail.

    With u = (x (-) x_0) (/) h, the value is f(x_0) (+) u (.) d_1 (+)
    [u (.) (u (-) e) (/) 2!] (.) d_2 (+) ... over the leading forward
    differences d_k.
    """
    if grid.last_index < 1:
        raise ValueError("interpolation needs at least 2 grid values")
    x = _coerce(x)
    u = gdiv(gsub(x, grid.x0), grid.h)
    lead = forward_table(grid).top_edge()
    terms = [lead[0]]
    acc = lead[0]
    factor = GEOMETRIC_IDENTITY
    for k in range(1, len(lead)):
        factor = gmul(factor, gsub(u, GNum(float(k - 1))))
        term = gmul(gdiv(factor, gfactorial(k)), lead[k])
        terms.append(term)
        acc = gadd(acc, term)
    node_logs = [n.logval for n in grid.nodes]
    return InterpReport(
        value=acc,
        terms=tuple(terms),
        weights=None,
        extrapolated=_is_outside(node_logs, x.logval),
    )


def interp_newton_forward(grid: UniformGrid, x) -> GNum:
    """Forward-difference interpolation on a uniform grid at x."""
    return newton_forward_report(grid, x).value


def lagrange_report(table: GTable, x) -> InterpReport:
    """Lagrange-form interpolation with per-term detail.

    Each node contributes weight_i (.) y_i where weight_i is the geometric
    quotient of the gap products excluding node i; the weight logs are the
    classical Lagrange basis values at ln x over the node logs.
    """
    if len(table) < 2:
        raise ValueError("interpolation needs at least 2 nodes")
    x = _coerce(x)
    xs, fs = table.xs, table.fs
    weights: list[float] = []
    terms: list[GNum] = []
    acc = None
    for i, (xi, fi) in enumerate(zip(xs, fs)):
        num = reduce(gmul, (gsub(x, xj) for j, xj in enumerate(xs) if j != i), GEOMETRIC_IDENTITY)
        den = reduce(gmul, (gsub(xi, xj) for j, xj in enumerate(xs) if j != i), GEOMETRIC_IDENTITY)
        weight = gdiv(num, den)
        term = gmul(weight, fi)
        weights.append(weight.logval)
        terms.append(term)
        acc = term if acc is None else gadd(acc, term)
    return InterpReport(
        value=acc,
        terms=tuple(terms),
        weights=tuple(weights),
        extrapolated=_is_outside([n.logval for n in xs], x.logval),
    )


def interp_lagrange(table: GTable, x) -> GNum:
    """Lagrange-form interpolation at x."""
    return lagrange_report(table, x).value


def remainder(table: GTable, x, true_value) -> GNum:
    """Exact interpolation remainder at x given the true value f(x).

    Extends the node set with (x, f(x)) and returns
    [product of (x (-) x_j) over all nodes] (.) dd(x, x_0, ..., x_n);
    the identity f(x) = interp_divided(table, x) (+) remainder holds in
    the log domain.  Raises DuplicateNodes when x coincides with a node.
    """
    x = _coerce(x)
    true_value = _coerce(true_value)
    extended = GTable(table.nodes + ((x, true_value),), require_sorted=False)
    dd_ext = divided_table(extended).rows[len(extended) - 1][0]
    gap_product = reduce(gmul, (gsub(x, xj) for xj in table.xs), GEOMETRIC_IDENTITY)
    return gmul(gap_product, dd_ext)
