"""Geometric differentiation.

The geometric derivative of a positive-valued f at x is the limit of the
geometric difference quotient under a shrinking geometric step; through the
exp/ln correspondence its log equals d/dv ln f(e**v) at v = ln x.  This
module provides numeric difference-quotient estimates for arbitrary
positive functions and exact term-wise rules for geometric polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

from .garith import GCalcError, GEOMETRIC_ZERO, GNum, _coerce

__all__ = [
    "NonPositiveSample",
    "OrderTooHigh",
    "PositiveFunction",
    "GPolynomial",
    "gderiv_numeric",
    "gderiv_poly",
    "gderiv_nth",
]


class NonPositiveSample(GCalcError):
    """A sampled function returned a non-positive or non-finite value."""


class OrderTooHigh(GCalcError):
    """Requested difference/derivative order exceeds what the data supports."""


# A positive function is sampled at GNum points.  It may return either a
# GNum (log read off exactly -- this is what makes the derivative of the
# identity exactly e at every step) or a plain positive float, which is
# logged.  GNum defines __float__, so e.g. math.sin works directly.
PositiveFunction = Callable[[GNum], Union[GNum, float]]


@dataclass(frozen=True)
class GPolynomial:
    """Geometric polynomial a0 (.) x**n (+) a1 (.) x**(n-1) (+) ... (+) an.

    Coefficients are GNums, leading first.  In the log domain this is an
    ordinary polynomial in v = ln x with coefficients ln a_k, which is what
    evaluation and differentiation act on.  The leading coefficient must
    not be the geometric zero (value 1) unless the degree is 0.
    """

    coeffs: tuple[GNum, ...]

    def __post_init__(self):
        coeffs = tuple(_coerce(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("polynomial needs at least one coefficient")
        if len(coeffs) > 1 and coeffs[0].logval == 0.0:
            raise ValueError("leading coefficient must not be the geometric zero")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_log_coeffs(cls, logs) -> "GPolynomial":
        """Build from the ordinary log-domain coefficients, leading first."""
        return cls(tuple(GNum(float(l)) for l in logs))

    @classmethod
    def monomial(cls, n: int) -> "GPolynomial":
        """The pure power x**n (leading coefficient e, the rest zero)."""
        if n < 0:
            raise ValueError(f"monomial degree must be >= 0, got {n}")
        return cls.from_log_coeffs([1.0] + [0.0] * n)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, x) -> GNum:
        """Horner evaluation of the log-domain polynomial at v = ln x."""
        v = _coerce(x).logval
        acc = 0.0
        for c in self.coeffs:
            acc = acc * v + c.logval
        return GNum(acc)

    __call__ = evaluate


def _sample_log(f: PositiveFunction, logpoint: float) -> float:
    """Evaluate f at the point e**logpoint and return the log of the sample."""
    out = f(GNum(logpoint))
    if isinstance(out, GNum):
        return out.logval
    try:
        v = float(out)
    except (TypeError, ValueError):
        raise NonPositiveSample(f"function returned non-numeric sample {out!r}") from None
    if not math.isfinite(v) or v <= 0.0:
        raise NonPositiveSample(f"function returned {v!r}, need a finite positive sample")
    return math.log(v)


def _quotient(f: PositiveFunction, v: float, u: float, one_sided: bool) -> float:
    # The denominator is the realised spacing of the sample logs, not 2u,
    # so the quotient is exact whenever f passes logs through unchanged.
    if one_sided:
        vp = v + u
        return (_sample_log(f, vp) - _sample_log(f, v)) / (vp - v)
    vp, vm = v + u, v - u
    return (_sample_log(f, vp) - _sample_log(f, vm)) / (vp - vm)


def gderiv_numeric(
    f: PositiveFunction,
    x,
    u: float = 1e-6,
    *,
    one_sided: bool = False,
    richardson: bool = False,
) -> GNum:
    """Numeric geometric derivative of f at x with log-step u.

    By default this is the symmetric two-sided quotient
    ``[f(x*e^u) / f(x*e^-u)] ** (1/(2u))``, second-order accurate in u; the
    one-sided variant matches the defining limit literally and is first
    order.  ``richardson`` applies one extrapolation level, cancelling the
    leading error term.
    """
    x = _coerce(x)
    u = float(u)
    if not math.isfinite(u) or u <= 0.0:
        raise ValueError(f"step must be a positive finite number, got {u!r}")
    if richardson:
        d_full = _quotient(f, x.logval, u, one_sided)
        d_half = _quotient(f, x.logval, u / 2.0, one_sided)
        k = 2.0 if one_sided else 4.0
        return GNum((k * d_half - d_full) / (k - 1.0))
    return GNum(_quotient(f, x.logval, u, one_sided))


def gderiv_poly(p: GPolynomial) -> GPolynomial:
    """Exact geometric derivative: a (.) x**m maps to (e**m (.) a) (.) x**(m-1)."""
    n = p.degree
    if n == 0:
        return GPolynomial((GEOMETRIC_ZERO,))
    return GPolynomial(tuple(GNum((n - k) * c.logval) for k, c in enumerate(p.coeffs[:-1])))


# Central-difference stencils (offset, coefficient), all O(u^2) accurate.
_STENCILS = {
    2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
    3: ((-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)),
    4: ((-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)),
}
_MAX_NUMERIC_ORDER = 4


def gderiv_nth(f, x, n: int, u: float = 1e-6) -> GNum:
    """n-th geometric derivative at x.

    A GPolynomial is differentiated exactly n times and evaluated; any
    other callable goes through an n-fold central difference of the sample
    logs with log-step u, supported up to order 4 (noise amplification
    makes higher numeric orders useless).
    """
    if n < 1:
        raise ValueError(f"derivative order must be >= 1, got {n}")
    if isinstance(f, GPolynomial):
        d = f
        for _ in range(n):
            d = gderiv_poly(d)
        return d.evaluate(x)
    x = _coerce(x)
    if n == 1:
        return gderiv_numeric(f, x, u)
    if n > _MAX_NUMERIC_ORDER:
        raise OrderTooHigh(f"numeric derivatives support order <= {_MAX_NUMERIC_ORDER}, got {n}")
    u = float(u)
    if not math.isfinite(u) or u <= 0.0:
        raise ValueError(f"step must be a positive finite number, got {u!r}")
    acc = 0.0
    for offset, coeff in _STENCILS[n]:
        acc += coeff * _sample_log(f, x.logval + offset * u)
    return GNum(acc / u**n)
