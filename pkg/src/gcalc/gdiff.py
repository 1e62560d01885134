"""Difference and divided-difference tables on geometric grids.

Forward and backward difference operators act on values sampled over a
geometrically uniform grid (node logs in arithmetic progression); divided
differences handle arbitrary distinct nodes.  Through the exp/ln
correspondence every table here is the exponential of the classical table
built from the logs of the data.
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass
from functools import reduce

from .garith import (
    GCalcError,
    GEOMETRIC_IDENTITY,
    GEOMETRIC_ZERO,
    GNum,
    _coerce,
    gadd,
    gbinom_coeff,
    gdiv,
    gfactorial,
    gmul,
    gneg,
    gpow_int,
    gsub,
)
from .gderiv import GPolynomial, OrderTooHigh, gderiv_poly

__all__ = [
    "DuplicateNodes",
    "UnsortedNodes",
    "StepIsZero",
    "NotUniform",
    "OrderTooHigh",
    "GTable",
    "UniformGrid",
    "TriangularTable",
    "forward_table",
    "forward_direct",
    "backward_table",
    "backward_direct",
    "divided_table",
    "divided_symmetric",
    "dd_from_forward",
    "confluent_dd",
]

# Nodes whose logs differ by less than this are treated as coincident; the
# geometric gap x_i (-) x_j would be the geometric zero and divided
# differences would divide by it.
_MIN_LOG_GAP = 1e-12


class DuplicateNodes(GCalcError):
    """Two abscissae coincide (log gap below 1e-12)."""


class UnsortedNodes(GCalcError):
    """Table rows are not in strictly increasing order of x."""


class StepIsZero(GCalcError):
    """A uniform grid was given the geometric zero (value 1) as its step."""


class NotUniform(GCalcError):
    """Node logs are not in arithmetic progression."""


@dataclass(frozen=True)
class GTable:
    """Interpolation nodes (x_i, f(x_i)), all positive, abscissae distinct.

    Nodes are kept in the order given.  Strictly increasing order is
    enforced by default; pass ``require_sorted=False`` to keep a permuted
    node order (divided differences are symmetric in their arguments, so
    every computation here is order-independent).
    """

    nodes: tuple[tuple[GNum, GNum], ...]
    require_sorted: InitVar[bool] = True

    def __post_init__(self, require_sorted: bool):
        nodes = tuple((_coerce(x), _coerce(f)) for x, f in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        logs = [x.logval for x, _ in nodes]
        for i in range(len(logs)):
            for j in range(i + 1, len(logs)):
                if abs(logs[i] - logs[j]) < _MIN_LOG_GAP:
                    raise DuplicateNodes(
                        f"nodes {i} and {j} coincide (log gap {abs(logs[i] - logs[j]):.3g})"
                    )
        if require_sorted:
            for i in range(len(logs) - 1):
                if logs[i] >= logs[i + 1]:
                    raise UnsortedNodes(f"node {i + 1} does not increase on its predecessor")

    @property
    def xs(self) -> tuple[GNum, ...]:
        return tuple(x for x, _ in self.nodes)

    @property
    def fs(self) -> tuple[GNum, ...]:
        return tuple(f for _, f in self.nodes)

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)


@dataclass(frozen=True)
class UniformGrid:
    """Samples f(x_k) over the geometrically equispaced nodes x_k = x0 (+) e**k (.) h.

    Node logs form the arithmetic progression ln x0 + k*ln h.  The step h
    must not be the geometric zero (value 1).
    """

    x0: GNum
    h: GNum
    values: tuple[GNum, ...]

    def __post_init__(self):
        object.__setattr__(self, "x0", _coerce(self.x0))
        object.__setattr__(self, "h", _coerce(self.h))
        object.__setattr__(self, "values", tuple(_coerce(v) for v in self.values))
        if self.h.logval == 0.0:
            raise StepIsZero("grid step must not be the geometric zero (value 1)")
        if not self.values:
            raise ValueError("grid needs at least one value")

    @classmethod
    def from_table(cls, table: GTable, rel_tol: float = 1e-9) -> "UniformGrid":
        """Adopt a node table, requiring geometrically equal spacing.

        Raises NotUniform when any log spacing deviates from the mean by
        more than ``rel_tol`` relative.
        """
        if len(table) < 2:
            raise NotUniform("need at least two nodes to determine a step")
        logs = [x.logval for x in table.xs]
        gaps = [b - a for a, b in zip(logs, logs[1:])]
        mean = math.fsum(gaps) / len(gaps)
        if any(abs(g - mean) > rel_tol * abs(mean) for g in gaps):
            raise NotUniform("node logs are not in arithmetic progression")
        return cls(table.xs[0], GNum(mean), table.fs)

    @property
    def last_index(self) -> int:
        return len(self.values) - 1

    def node(self, k: int) -> GNum:
        return GNum(self.x0.logval + k * self.h.logval)

    @property
    def nodes(self) -> tuple[GNum, ...]:
        return tuple(self.node(k) for k in range(len(self.values)))

    def to_table(self) -> GTable:
        """The same data as a node table (unsorted form to allow h < 1)."""
        return GTable(tuple(zip(self.nodes, self.values)), require_sorted=False)


@dataclass(frozen=True)
class TriangularTable:
    """Full difference triangle: rows[k] holds the order-k entries.

    rows[0] is the input data; each further row is one entry shorter.
    """

    rows: tuple[tuple[GNum, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise ValueError("triangular table needs at least the data row")
        for k in range(len(rows) - 1):
            if len(rows[k + 1]) != len(rows[k]) - 1:
                raise ValueError(f"row {k + 1} must be one entry shorter than row {k}")

    @property
    def max_order(self) -> int:
        return len(self.rows) - 1

    def order(self, k: int) -> tuple[GNum, ...]:
        return self.rows[k]

    def top_edge(self) -> tuple[GNum, ...]:
        """Leading entry of every order: the Newton-form coefficients."""
        return tuple(row[0] for row in self.rows)

    def __getitem__(self, k: int) -> tuple[GNum, ...]:
        return self.rows[k]


def _resolve_order(max_order, limit: int) -> int:
    if max_order is None:
        return limit
    if not 0 <= max_order <= limit:
        raise OrderTooHigh(f"order {max_order} needs {max_order + 1} values, have {limit + 1}")
    return max_order


def forward_table(grid: UniformGrid, max_order: int | None = None) -> TriangularTable:
    """Iterated forward differences: rows[k][i] is the order-k difference at node i.

    Recurrence: rows[k+1][i] = rows[k][i+1] (-) rows[k][i].
    """
    max_order = _resolve_order(max_order, grid.last_index)
    rows = [tuple(grid.values)]
    for _ in range(max_order):
        prev = rows[-1]
        rows.append(tuple(gsub(prev[i + 1], prev[i]) for i in range(len(prev) - 1)))
    return TriangularTable(tuple(rows))


def forward_direct(grid: UniformGrid, n: int, i: int = 0) -> GNum:
    """Order-n forward difference at node i by the closed binomial sum.

    Geometric sum over k of the alternating factor, e**C(n, k) and
    f(x_{i+n-k}); equals the forward-table entry rows[n][i].
    """
    if n < 0:
        raise ValueError(f"difference order must be >= 0, got {n}")
    if i < 0 or i + n > grid.last_index:
        raise OrderTooHigh(f"order-{n} difference at node {i} needs node {i + n}")
    total = GEOMETRIC_ZERO
    for k in range(n + 1):
        weight = gbinom_coeff(n, k)
        if k % 2:
            weight = gneg(weight)
        total = gadd(total, gmul(weight, grid.values[i + n - k]))
    return total


def backward_table(grid: UniformGrid, max_order: int | None = None) -> TriangularTable:
    """Iterated backward differences: rows[k][i] is the order-k difference at node i+k.

    The backward recurrence produces the same triangle of numbers as the
    forward one, attributed to the upper end of each difference window.
    """
    return forward_table(grid, max_order)


def backward_direct(grid: UniformGrid, n: int, i: int) -> GNum:
    """Order-n backward difference at node i by the closed binomial sum.

    Geometric sum over k of the alternating factor, e**C(n, k) and
    f(x_{i-k}); equals the backward-table entry rows[n][i-n].
    """
    if n < 0:
        raise ValueError(f"difference order must be >= 0, got {n}")
    if i > grid.last_index or i - n < 0:
        raise OrderTooHigh(f"order-{n} difference at node {i} needs node {i - n}")
    total = GEOMETRIC_ZERO
    for k in range(n + 1):
        weight = gbinom_coeff(n, k)
        if k % 2:
            weight = gneg(weight)
        total = gadd(total, gmul(weight, grid.values[i - k]))
    return total


def divided_table(table: GTable, max_order: int | None = None) -> TriangularTable:
    """Divided differences over arbitrary distinct nodes.

    rows[k][i] holds the difference over nodes i..i+k; the recurrence is
    (rows[k][i+1] (-) rows[k][i]) (/) (x_{i+k+1} (-) x_i).  Exponential of
    the classical Newton table of the logs.
    """
    if len(table) == 0:
        raise ValueError("empty table")
    max_order = _resolve_order(max_order, len(table) - 1)
    xs = table.xs
    rows = [tuple(table.fs)]
    for k in range(max_order):
        prev = rows[-1]
        rows.append(
            tuple(
                gdiv(gsub(prev[i + 1], prev[i]), gsub(xs[i + k + 1], xs[i]))
                for i in range(len(prev) - 1)
            )
        )
    return TriangularTable(tuple(rows))


def divided_symmetric(table: GTable, order: int) -> GNum:
    """Top divided difference by the explicit symmetric sum.

    Geometric sum over i of f(x_i) (/) product of (x_i (-) x_j), j != i.
    Identical in value to the recursive table entry and manifestly
    invariant under node permutations; ``order`` must be len(table) - 1.
    """
    if order != len(table) - 1:
        raise OrderTooHigh(f"order {order} does not match a {len(table)}-node table")
    total = None
    xs, fs = table.xs, table.fs
    for i, (xi, fi) in enumerate(zip(xs, fs)):
        gaps = (gsub(xi, xj) for j, xj in enumerate(xs) if j != i)
        term = gdiv(fi, reduce(gmul, gaps, GEOMETRIC_IDENTITY))
        total = term if total is None else gadd(total, term)
    return total


def dd_from_forward(grid: UniformGrid, n: int) -> GNum:
    """Order-n divided difference of a uniform grid from its forward difference.

    Uses the identity dd = forward_diff (/) (n! (.) h**n); equals the
    divided-table entry on the same nodes.
    """
    if n < 0:
        raise ValueError(f"order must be >= 0, got {n}")
    if n > grid.last_index:
        raise OrderTooHigh(f"order {n} needs {n + 1} values, have {grid.last_index + 1}")
    if n == 0:
        # the order-0 scaling divides by h**0 = e, a no-op
        return grid.values[0]
    delta = forward_direct(grid, n, 0)
    return gdiv(delta, gmul(gfactorial(n), gpow_int(grid.h, n)))


def confluent_dd(p: GPolynomial, x0, m: int) -> GNum:
    """Divided difference of p with the argument x0 repeated m+1 times.

    Coinciding nodes are the limit of clustering distinct ones; for a
    polynomial the limit is the m-th geometric derivative scaled by the
    reciprocal factorial (log divided by m!).
    """
    if m < 0:
        raise ValueError(f"confluence order must be >= 0, got {m}")
    if m > p.degree:
        raise OrderTooHigh(f"confluence order {m} exceeds polynomial degree {p.degree}")
    d = p
    for _ in range(m):
        d = gderiv_poly(d)
    value = d.evaluate(x0)
    if m == 0:
        return value
    return gdiv(value, gfactorial(m))
