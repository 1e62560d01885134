"""Expression mini-language for geometric arithmetic, plus the table reader.

Grammar (operators spelled for the terminal, unicode accepted as aliases):

    expr    := term (('.+' | '.-') term)*
    term    := unary (('.*' | './') unary)*
    unary   := '.-' unary | atom
    atom    := number | glit | call | '(' expr ')'
    call    := 'gabs' | 'gsqrt' | 'ginv'   '(' expr ')'
             | 'gpow'   '(' expr ',' number ')'
             | 'gfact'  '(' integer ')'
             | 'gbinom' '(' integer ',' integer ')'
    number  := positive decimal, e.g. 2 or 0.5   (no sign, no exponent)
    glit    := 'e^' signed decimal, e.g. e^-0.12 (stored exactly as the log)

Precedence: unary '.-' binds tightest, then '.*' './', then '.+' '.-';
binary operators associate left.  Token spans are byte offsets into the
UTF-8 source and every raised error carries the span it came from.

The table file format shared with the CLI: UTF-8, LF or CRLF, header line
``x,f``, rows ``value,value`` with the literal grammar above, lines
starting with '#' ignored, rows sorted by increasing x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from .garith import (
    GCalcError,
    GNum,
    format_gnum,
    gabs,
    gadd,
    gbinom_coeff,
    gdiv,
    gfactorial,
    ginv,
    gmul,
    gneg,
    gnum_from_value,
    gpow_int,
    gpow_real,
    gsqrt,
    gsub,
    parse_gnum,
)
from .gdiff import GTable

__all__ = [
    "LexError",
    "ParseError",
    "FormatError",
    "Token",
    "Literal",
    "Scalar",
    "Unary",
    "Binary",
    "Call",
    "ExprNode",
    "tokenize",
    "parse",
    "evaluate",
    "format_expr",
    "read_table",
]


class LexError(GCalcError):
    """Unexpected character in the source text."""


class ParseError(GCalcError):
    """Token stream does not match the grammar."""


class FormatError(GCalcError):
    """Table file violates the file format; carries row and column."""

    def __init__(self, message: str, row: int | None = None, col: int | None = None):
        super().__init__(message)
        self.row = row
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # number | glit | op | ident | lparen | rparen | comma
    text: str
    start: int  # byte offsets into the UTF-8 source
    end: int

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass(frozen=True)
class Literal:
    """A geometric number literal."""

    value: GNum
    span: tuple[int, int] = (0, 0)


@dataclass(frozen=True)
class Scalar:
    """A plain number argument (gpow exponent, gfact/gbinom index)."""

    value: Union[int, float]
    span: tuple[int, int] = (0, 0)


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "ExprNode"
    span: tuple[int, int] = (0, 0)


@dataclass(frozen=True)
class Binary:
    op: str  # one of .+ .- .* ./
    left: "ExprNode"
    right: "ExprNode"
    span: tuple[int, int] = (0, 0)


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["ExprNode", ...]
    span: tuple[int, int] = (0, 0)


ExprNode = Union[Literal, Scalar, Unary, Binary, Call]

_OP_ALIASES = {"⊕": ".+", "⊖": ".-", "⊙": ".*", "⊘": "./"}
_ASCII_OPS = {".+", ".-", ".*", "./"}


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_"


def _is_ident_part(ch: str) -> bool:
    return ch.isalnum() or ch == "_"


def tokenize(src: str) -> list[Token]:
    """Split source text into tokens; spans are UTF-8 byte offsets."""
    tokens: list[Token] = []
    i = 0
    byte = 0
    n = len(src)

    def emit(kind: str, text: str):
        nonlocal i, byte
        blen = len(text.encode("utf-8"))
        tokens.append(Token(kind, text, byte, byte + blen))
        i += len(text)
        byte += blen

    while i < n:
        ch = src[i]
        if ch in " \t\r\n":
            i += 1
            byte += len(ch.encode("utf-8"))
            continue
        if ch == "(":
            emit("lparen", ch)
        elif ch == ")":
            emit("rparen", ch)
        elif ch == ",":
            emit("comma", ch)
        elif ch in _OP_ALIASES:
            emit("op", ch)
        elif ch == "." and i + 1 < n and src[i + 1] in "+-*/":
            emit("op", src[i : i + 2])
        elif ch == "e" and i + 1 < n and src[i + 1] == "^":
            j = i + 2
            if j < n and src[j] in "+-":
                j += 1
            k = j
            while k < n and src[k].isdigit():
                k += 1
            if k == j:
                blen = len(src[i : i + 2].encode("utf-8"))
                raise LexError("e^ literal needs a decimal exponent", span=(byte, byte + blen))
            if k < n and src[k] == "." and k + 1 < n and src[k + 1].isdigit():
                k += 1
                while k < n and src[k].isdigit():
                    k += 1
            # scientific part of the exponent, e.g. e^1.5e-07
            if k < n and src[k] in "eE":
                m = k + 1
                if m < n and src[m] in "+-":
                    m += 1
                if m < n and src[m].isdigit():
                    while m < n and src[m].isdigit():
                        m += 1
                    k = m
            emit("glit", src[i:k])
        elif ch.isdigit():
            j = i + 1
            while j < n and src[j].isdigit():
                j += 1
            if j < n and src[j] == "." and j + 1 < n and src[j + 1].isdigit():
                j += 1
                while j < n and src[j].isdigit():
                    j += 1
            emit("number", src[i:j])
        elif _is_ident_start(ch):
            j = i + 1
            while j < n and _is_ident_part(src[j]):
                j += 1
            emit("ident", src[i:j])
        else:
            blen = len(ch.encode("utf-8"))
            raise LexError(f"unexpected character {ch!r}", span=(byte, byte + blen))
    return tokens


# name -> argument shapes: "expr" is a sub-expression, "real"/"int" are
# plain number tokens taken classically.
_FUNCTIONS = {
    "gabs": ("expr",),
    "gsqrt": ("expr",),
    "ginv": ("expr",),
    "gpow": ("expr", "real"),
    "gfact": ("int",),
    "gbinom": ("int", "int"),
}


class _Parser:
    def __init__(self, tokens: Sequence[Token]):
        self.tokens = list(tokens)
        self.pos = 0
        end = self.tokens[-1].end if self.tokens else 0
        self.eof_span = (end, end)

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", span=self.eof_span)
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"expected {what}, found end of input", span=self.eof_span)
        if tok.kind != kind:
            raise ParseError(f"expected {what}, found {tok.text!r}", span=tok.span)
        return self.advance()

    def op_text(self, tok: Token) -> str:
        return _OP_ALIASES.get(tok.text, tok.text)

    def parse_expr(self) -> ExprNode:
        node = self.parse_term()
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "op" or self.op_text(tok) not in (".+", ".-"):
                return node
            self.advance()
            right = self.parse_term()
            node = Binary(self.op_text(tok), node, right, span=(node.span[0], right.span[1]))

    def parse_term(self) -> ExprNode:
        node = self.parse_unary()
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "op" or self.op_text(tok) not in (".*", "./"):
                return node
            self.advance()
            right = self.parse_unary()
            node = Binary(self.op_text(tok), node, right, span=(node.span[0], right.span[1]))

    def parse_unary(self) -> ExprNode:
        tok = self.peek()
        if tok is not None and tok.kind == "op" and self.op_text(tok) == ".-":
            self.advance()
            operand = self.parse_unary()
            return Unary(".-", operand, span=(tok.start, operand.span[1]))
        if tok is not None and tok.kind == "op":
            raise ParseError(f"unexpected operator {tok.text!r}", span=tok.span)
        return self.parse_atom()

    def parse_atom(self) -> ExprNode:
        tok = self.advance()
        if tok.kind == "number":
            try:
                value = gnum_from_value(float(tok.text))
            except GCalcError as err:
                err.span = tok.span
                raise
            return Literal(value, span=tok.span)
        if tok.kind == "glit":
            return Literal(GNum(float(tok.text[2:])), span=tok.span)
        if tok.kind == "ident":
            return self.parse_call(tok)
        if tok.kind == "lparen":
            node = self.parse_expr()
            self.expect("rparen", "')'")
            return node
        raise ParseError(f"unexpected {tok.text!r}", span=tok.span)

    def parse_call(self, name_tok: Token) -> ExprNode:
        name = name_tok.text
        if name not in _FUNCTIONS:
            raise ParseError(f"unknown function {name!r}", span=name_tok.span)
        self.expect("lparen", "'('")
        args: list[ExprNode] = []
        for pos, shape in enumerate(_FUNCTIONS[name]):
            if pos:
                self.expect("comma", "','")
            if shape == "expr":
                args.append(self.parse_expr())
            else:
                tok = self.expect("number", "a number literal")
                if shape == "int":
                    if "." in tok.text:
                        raise ParseError(f"expected an integer literal, found {tok.text!r}", span=tok.span)
                    args.append(Scalar(int(tok.text), span=tok.span))
                else:
                    value = float(tok.text) if "." in tok.text else int(tok.text)
                    args.append(Scalar(value, span=tok.span))
        close = self.expect("rparen", "')'")
        return Call(name, tuple(args), span=(name_tok.start, close.end))


def parse(tokens: Union[str, Sequence[Token]]) -> ExprNode:
    """Parse tokens (or source text directly) into an expression tree."""
    if isinstance(tokens, str):
        tokens = tokenize(tokens)
    parser = _Parser(tokens)
    node = parser.parse_expr()
    trailing = parser.peek()
    if trailing is not None:
        raise ParseError(f"unexpected {trailing.text!r} after expression", span=trailing.span)
    return node


_BINARY_OPS = {".+": gadd, ".-": gsub, ".*": gmul, "./": gdiv}


def evaluate(node: ExprNode) -> GNum:
    """Fold an expression tree through the geometric operations.

    Arithmetic errors are re-raised with the span of the node whose
    evaluation failed.
    """
    if isinstance(node, Literal):
        return node.value
    if isinstance(node, Scalar):
        raise ParseError("plain number used outside a function argument", span=node.span)
    try:
        if isinstance(node, Unary):
            return gneg(evaluate(node.operand))
        if isinstance(node, Binary):
            left = evaluate(node.left)
            right = evaluate(node.right)
            return _BINARY_OPS[node.op](left, right)
        if isinstance(node, Call):
            return _eval_call(node)
    except GCalcError as err:
        if err.span is None:
            err.span = node.span
        raise
    raise TypeError(f"not an expression node: {node!r}")


def _eval_call(node: Call) -> GNum:
    if node.name == "gabs":
        return gabs(evaluate(node.args[0]))
    if node.name == "gsqrt":
        return gsqrt(evaluate(node.args[0]))
    if node.name == "ginv":
        return ginv(evaluate(node.args[0]))
    if node.name == "gpow":
        base = evaluate(node.args[0])
        p = node.args[1].value
        return gpow_int(base, p) if isinstance(p, int) else gpow_real(base, p)
    if node.name == "gfact":
        return gfactorial(node.args[0].value)
    if node.name == "gbinom":
        return gbinom_coeff(node.args[0].value, node.args[1].value)
    raise ParseError(f"unknown function {node.name!r}", span=node.span)


_PRECEDENCE = {".+": 1, ".-": 1, ".*": 2, "./": 2}
_UNARY_PRECEDENCE = 3


def _format_scalar(v) -> str:
    if isinstance(v, int):
        return str(v)
    s = repr(v)
    if "e" not in s and "E" not in s:
        return s
    # force plain decimal so the text re-lexes as a number token
    decimals = 17 - min(0, math.floor(math.log10(abs(v))) + 1) if v != 0 else 1
    return f"{v:.{max(1, decimals)}f}"


def _fmt(node: ExprNode, ctx: int) -> str:
    if isinstance(node, Literal):
        return format_gnum(node.value)
    if isinstance(node, Scalar):
        return _format_scalar(node.value)
    if isinstance(node, Unary):
        return ".-" + _fmt(node.operand, _UNARY_PRECEDENCE)
    if isinstance(node, Call):
        return f"{node.name}({', '.join(_fmt(a, 0) for a in node.args)})"
    if isinstance(node, Binary):
        prec = _PRECEDENCE[node.op]
        text = f"{_fmt(node.left, prec)} {node.op} {_fmt(node.right, prec + 1)}"
        return f"({text})" if prec < ctx else text
    raise TypeError(f"not an expression node: {node!r}")


def format_expr(node: ExprNode) -> str:
    """Canonical text form; re-parsing it rebuilds an equal-valued tree."""
    return _fmt(node, 0)


def read_table(src: str) -> GTable:
    """Parse the table file format into a GTable.

    Header row ``x,f``, then one ``value,value`` row per node; values are
    positive decimals or e^ literals.  Lines starting with '#' and blank
    lines are skipped.  Rows must be sorted by strictly increasing x.
    """
    header_seen = False
    rows: list[tuple[GNum, GNum]] = []
    for ln, raw in enumerate(src.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line != "x,f":
                raise FormatError(f"line {ln}: expected header 'x,f', found {line!r}", row=ln)
            header_seen = True
            continue
        fields = line.split(",")
        if len(fields) != 2:
            raise FormatError(f"line {ln}: expected 2 fields, found {len(fields)}", row=ln)
        pair = []
        for col, field in enumerate(fields, 1):
            try:
                pair.append(parse_gnum(field.strip()))
            except (ValueError, GCalcError) as exc:
                raise FormatError(f"line {ln}, field {col}: {exc}", row=ln, col=col) from exc
        rows.append((pair[0], pair[1]))
    if not header_seen:
        raise FormatError("missing header 'x,f'")
    if not rows:
        raise FormatError("table has no data rows")
    return GTable(tuple(rows))
