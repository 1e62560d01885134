"""Exact geometric arithmetic on the positive reals.

Under the exponential generator the positive reals form a complete ordered
field: geometric addition is ordinary multiplication (``x (+) y = x*y``),
geometric multiplication raises to a logarithm (``x (.) y = x**ln(y)``),
the additive zero is 1 and the multiplicative identity is e.  Every element
is carried by its natural logarithm, so each geometric operation reduces to
the corresponding ordinary operation on exponents and values such as e**120
stay exact even though their decimal form overflows a float.

Operator spellings used by the expression language: ``.+`` ``.-`` ``.*``
``./`` (with unicode aliases), see :mod:`gcalc.gexpr`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

__all__ = [
    "GCalcError",
    "NonPositiveValue",
    "NotFinite",
    "GeometricDivisionByZero",
    "DomainError",
    "Overflow",
    "BinomialRangeError",
    "GNum",
    "GEOMETRIC_ZERO",
    "GEOMETRIC_IDENTITY",
    "gnum_from_value",
    "gadd",
    "gsub",
    "gneg",
    "gmul",
    "gdiv",
    "gpow_int",
    "gpow_real",
    "gsqrt",
    "ginv",
    "gabs",
    "gcompare",
    "gfactorial",
    "gbinom_coeff",
    "gbinom_expand",
    "format_gnum",
    "parse_gnum",
]


class GCalcError(Exception):
    """Base class for geometric-arithmetic errors.

    ``span`` is the (start, end) byte range of offending source text; it is
    attached by the expression evaluator and stays None for direct API use.
    """

    def __init__(self, message: str, span: tuple[int, int] | None = None):
        super().__init__(message)
        self.span = span


class NonPositiveValue(GCalcError):
    """A value outside the positive reals was given where one is required."""


class NotFinite(GCalcError):
    """NaN or an infinity appeared where a finite number is required."""


class GeometricDivisionByZero(GCalcError):
    """Geometric division (or inversion) by the geometric zero, the value 1."""


class DomainError(GCalcError):
    """Operation undefined for the given operands."""


class Overflow(GCalcError):
    """Result cannot be represented exactly (or at all) as a float."""


class BinomialRangeError(GCalcError, IndexError):
    """Binomial coefficient index out of range."""


@dataclass(frozen=True)
class GNum:
    """A positive real carried by its natural logarithm.

    ``GNum(u)`` represents the value e**u.  The geometric zero is
    ``GNum(0.0)`` (value 1) and the geometric identity is ``GNum(1.0)``
    (value e).  Instances are immutable; ``==`` compares logs bitwise, use
    :meth:`isclose` for tolerant comparison.  The arithmetic dunders are the
    geometric field operations (``+`` is ``gadd`` and so on).
    """

    logval: float

    def __post_init__(self):
        object.__setattr__(self, "logval", float(self.logval))
        if not math.isfinite(self.logval):
            raise NotFinite(f"geometric number needs a finite log, got {self.logval!r}")

    @classmethod
    def from_value(cls, v) -> "GNum":
        """Embed a positive real by taking its logarithm."""
        return gnum_from_value(v)

    @property
    def value(self) -> float:
        """Ordinary decimal value e**logval; +inf once the float overflows."""
        try:
            return math.exp(self.logval)
        except OverflowError:
            return math.inf

    def isclose(self, other, abs_tol: float = 1e-9) -> bool:
        """Log-domain closeness; the default equality used in tests."""
        return math.isclose(self.logval, _coerce(other).logval, rel_tol=0.0, abs_tol=abs_tol)

    def __float__(self) -> float:
        return self.value

    def __str__(self) -> str:
        return format_gnum(self)

    def __repr__(self) -> str:
        return f"GNum({self.logval!r})"

    def __add__(self, other):
        return gadd(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        return gsub(self, other)

    def __rsub__(self, other):
        return gsub(other, self)

    def __mul__(self, other):
        return gmul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return gdiv(self, other)

    def __rtruediv__(self, other):
        return gdiv(other, self)

    def __neg__(self):
        return gneg(self)

    def __abs__(self):
        return gabs(self)

    def __pow__(self, p):
        if isinstance(p, bool) or not isinstance(p, (int, float)):
            return NotImplemented
        return gpow_int(self, p) if isinstance(p, int) else gpow_real(self, p)

    def __lt__(self, other):
        return self.logval < _coerce(other).logval

    def __le__(self, other):
        return self.logval <= _coerce(other).logval

    def __gt__(self, other):
        return self.logval > _coerce(other).logval

    def __ge__(self, other):
        return self.logval >= _coerce(other).logval


def _coerce(x) -> GNum:
    """Accept a GNum or embed a plain positive number."""
    if isinstance(x, GNum):
        return x
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return gnum_from_value(x)
    raise TypeError(f"expected GNum or positive real, got {type(x).__name__}")


def gnum_from_value(v) -> GNum:
    """Embed a positive real into the geometric field (take its log)."""
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise TypeError(f"expected a real number, got {type(v).__name__}")
    v = float(v)
    if math.isnan(v) or math.isinf(v):
        raise NotFinite(f"value must be finite, got {v!r}")
    if v <= 0.0:
        raise NonPositiveValue(f"value must be > 0, got {v!r}")
    return GNum(math.log(v))


def gadd(x, y) -> GNum:
    """Geometric sum x (+) y = x*y: logs add."""
    return GNum(_coerce(x).logval + _coerce(y).logval)


def gsub(x, y) -> GNum:
    """Geometric difference x (-) y = x/y: logs subtract."""
    return GNum(_coerce(x).logval - _coerce(y).logval)


def gneg(x) -> GNum:
    """Geometric negation: the reciprocal value, log negated."""
    return GNum(-_coerce(x).logval)


def gmul(x, y) -> GNum:
    """Geometric product x (.) y = x**ln(y): logs multiply."""
    x, y = _coerce(x), _coerce(y)
    return GNum(x.logval * y.logval)


def gdiv(x, y) -> GNum:
    """Geometric quotient x (/) y = x**(1/ln(y)): logs divide."""
    x, y = _coerce(x), _coerce(y)
    if y.logval == 0.0:
        raise GeometricDivisionByZero("geometric division by zero (divisor is 1)")
    return GNum(x.logval / y.logval)


def gpow_int(x, n: int) -> GNum:
    """n-fold geometric power: log is (ln x)**n; x**0 is the identity e."""
    x = _coerce(x)
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"exponent must be an integer, got {type(n).__name__}")
    if n < 0 and x.logval == 0.0:
        raise GeometricDivisionByZero("negative geometric power of the geometric zero")
    try:
        return GNum(x.logval**n)
    except OverflowError:
        raise Overflow(f"geometric power {x!r}**{n} overflows") from None


def gpow_real(x, p: float) -> GNum:
    """Real geometric power: log is (ln x)**p, needs ln x > 0 unless p is integral."""
    x = _coerce(x)
    p = float(p)
    if not math.isfinite(p):
        raise NotFinite(f"exponent must be finite, got {p!r}")
    if p.is_integer():
        return gpow_int(x, int(p))
    if x.logval <= 0.0:
        raise DomainError(f"non-integral geometric power needs ln(x) > 0, got ln(x) = {x.logval!r}")
    try:
        return GNum(x.logval**p)
    except OverflowError:
        raise Overflow(f"geometric power {x!r}**{p} overflows") from None


def gsqrt(x) -> GNum:
    """Geometric square root: log is sqrt(ln x); needs ln x >= 0."""
    x = _coerce(x)
    if x.logval < 0.0:
        raise DomainError(f"geometric sqrt needs ln(x) >= 0, got {x.logval!r}")
    return GNum(math.sqrt(x.logval))


def ginv(x) -> GNum:
    """Geometric multiplicative inverse: log is 1/ln(x); x (.) ginv(x) = e."""
    x = _coerce(x)
    if x.logval == 0.0:
        raise GeometricDivisionByZero("geometric inverse of the geometric zero")
    return GNum(1.0 / x.logval)


def gabs(x) -> GNum:
    """Geometric absolute value: log is |ln x|; always >= 1 in value."""
    return GNum(abs(_coerce(x).logval))


def gcompare(x, y) -> int:
    """Total order through the logs: -1, 0 or 1."""
    x, y = _coerce(x), _coerce(y)
    if x.logval < y.logval:
        return -1
    if x.logval > y.logval:
        return 1
    return 0


# 23! is the first factorial whose float conversion is inexact.
_MAX_EXACT_FACTORIAL = 22


def gfactorial(n: int) -> GNum:
    """Geometric factorial: e**(n!) for n >= 1, and 1 for n = 0.

    The log is the ordinary factorial held exactly; past n = 22 the float
    log would silently lose integer digits, so larger n raise Overflow.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"expected an integer, got {type(n).__name__}")
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    if n == 0:
        return GEOMETRIC_ZERO
    if n > _MAX_EXACT_FACTORIAL:
        raise Overflow(
            f"{n}! cannot be held exactly in a float log (largest supported n is {_MAX_EXACT_FACTORIAL})"
        )
    return GNum(float(math.factorial(n)))


def gbinom_coeff(n: int, r: int) -> GNum:
    """Geometric binomial coefficient e**C(n, r), C computed exactly."""
    if n < 0 or r < 0 or r > n:
        raise BinomialRangeError(f"binomial index out of range: C({n}, {r})")
    c = math.comb(n, r)
    try:
        cf = float(c)
    except OverflowError:
        raise Overflow(f"C({n}, {r}) overflows a float") from None
    if int(cf) != c:
        raise Overflow(f"C({n}, {r}) cannot be held exactly in a float log")
    return GNum(cf)


def gbinom_expand(a, b, n: int, subtract: bool = False) -> GNum:
    """Expand (a (+) b)**n, or (a (-) b)**n when ``subtract`` is set.

    Evaluates the binomial sum term by term: each term is the geometric
    product of e**C(n, r) with the split powers of a and b, with an
    alternating reciprocal-e factor in the subtractive form.  Equal to
    ``gpow_int(gadd(a, b), n)`` (resp. gsub) up to rounding.
    """
    a, b = _coerce(a), _coerce(b)
    if n < 0:
        raise ValueError(f"binomial degree must be >= 0, got {n}")
    total = GEOMETRIC_ZERO
    for r in range(n + 1):
        weight = gbinom_coeff(n, r)
        if subtract and r % 2:
            weight = gneg(weight)
        total = gadd(total, gmul(weight, gmul(gpow_int(a, n - r), gpow_int(b, r))))
    return total


# Printing: decimal value while the log is moderate, exact e^ form beyond.
_PRINT_AS_VALUE_MAX_LOG = 15.0
_DECIMAL_RE = re.compile(r"\d+(\.\d+)?")
_EXPONENT_RE = re.compile(r"[+-]?\d+(\.\d+)?([eE][+-]?\d+)?")


def _format_log(l: float) -> str:
    if l == int(l) and abs(l) < 1e16:
        return str(int(l))
    return repr(l)


def format_gnum(x: GNum, precision: int | None = None) -> str:
    """Render a GNum as text: decimal value when |log| <= 15, else ``e^log``.

    With ``precision`` None the decimal form is exact (it parses back to the
    same element, falling back to the e^ form when it would not); with an
    integer it is fixed-point with that many decimals, falling back to the
    e^ form when the rounded value would print as zero.
    """
    l = x.logval
    if abs(l) <= _PRINT_AS_VALUE_MAX_LOG:
        if precision is not None:
            s = f"{x.value:.{precision}f}"
            if float(s) > 0.0:
                return s
        else:
            s = repr(x.value)
            if "e" not in s and "E" not in s and math.log(float(s)) == l:
                return s
    return "e^" + _format_log(l)


def parse_gnum(text: str) -> GNum:
    """Parse a number literal: a positive decimal or ``e^<signed decimal>``.

    The e^ exponent is stored directly as the log, with no exp/ln round
    trip, so e.g. ``e^0.12`` is exact.  Raises ValueError on malformed text,
    NonPositiveValue on a zero-valued decimal.
    """
    if text.startswith("e^"):
        exp_text = text[2:]
        if not _EXPONENT_RE.fullmatch(exp_text):
            raise ValueError(f"malformed exponent in {text!r}")
        return GNum(float(exp_text))
    if not _DECIMAL_RE.fullmatch(text):
        raise ValueError(f"not a number literal: {text!r}")
    return gnum_from_value(float(text))


GEOMETRIC_ZERO = GNum(0.0)
GEOMETRIC_IDENTITY = GNum(1.0)
