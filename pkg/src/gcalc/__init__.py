"""Geometric (multiplicative) calculus toolkit.

Exact geometric arithmetic on the positive reals carried in the log
domain, forward/backward/divided difference tables, three interpolation
engines, geometric differentiation, a small expression language and a CLI.
"""

from .garith import (
    GCalcError,
    NonPositiveValue,
    NotFinite,
    GeometricDivisionByZero,
    DomainError,
    Overflow,
    BinomialRangeError,
    GNum,
    GEOMETRIC_ZERO,
    GEOMETRIC_IDENTITY,
    gnum_from_value,
    gadd,
    gsub,
    gneg,
    gmul,
    gdiv,
    gpow_int,
    gpow_real,
    gsqrt,
    ginv,
    gabs,
    gcompare,
    gfactorial,
    gbinom_coeff,
    gbinom_expand,
    format_gnum,
    parse_gnum,
)
from .gderiv import (
    NonPositiveSample,
    OrderTooHigh,
    GPolynomial,
    PositiveFunction,
    gderiv_numeric,
    gderiv_poly,
    gderiv_nth,
)
from .gdiff import (
    DuplicateNodes,
    UnsortedNodes,
    StepIsZero,
    NotUniform,
    GTable,
    UniformGrid,
    TriangularTable,
    forward_table,
    forward_direct,
    backward_table,
    backward_direct,
    divided_table,
    divided_symmetric,
    dd_from_forward,
    confluent_dd,
)
from .ginterp import (
    InterpReport,
    interp_divided,
    interp_newton_forward,
    interp_lagrange,
    remainder,
    divided_report,
    newton_forward_report,
    lagrange_report,
)
from .gexpr import (
    LexError,
    ParseError,
    FormatError,
    Token,
    ExprNode,
    tokenize,
    parse,
    evaluate,
    format_expr,
    read_table,
)

__version__ = "0.1.0"
