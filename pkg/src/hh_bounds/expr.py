"""Tiny arithmetic expression language for functions of x and y.

Grammar, lowest precedence first (whitespace insensitive, no implicit
multiplication):

    additive        (+, -)
    multiplicative  (*, /)
    unary minus     (so -x^2 means -(x^2))
    power           (^ with a numeric-literal exponent, optionally signed)
    atoms           number, x, y, (expr), exp(e), abs(e), max(e,e), min(e,e)

Parsing reports the first failure as a :class:`ParseError` carrying the byte
offset of the offending token. Division by zero and other domain problems are
deferred to evaluation, which raises :class:`EvaluationError` with the source
span of the failing subexpression.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import NamedTuple, Union

import numpy as np

from .errors import EvaluationError, HHBoundsError

Span = tuple[int, int]


class ParseError(HHBoundsError):
    def __init__(self, position: int, expected: str, found: str):
        super().__init__(f"at offset {position}: expected {expected}, found {found}")
        self.position = position
        self.expected = expected
        self.found = found


@dataclass(frozen=True)
class Number:
    value: float
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Var:
    name: str  # "x" or "y"
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Unary:
    op: str  # "neg", "abs", "exp"
    arg: "Node"
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Binary:
    op: str  # "+", "-", "*", "/", "^"
    left: "Node"
    right: "Node"
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Call:
    fn: str  # "max", "min"
    args: tuple["Node", "Node"]
    span: Span | None = field(default=None, compare=False)


Node = Union[Number, Var, Unary, Binary, Call]


class _Token(NamedTuple):
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),]))")


def _tokenize(src: str) -> list[_Token]:
    toks: list[_Token] = []
    i = 0
    while i < len(src):
        m = _TOKEN_RE.match(src, i)
        if m is None or m.lastgroup is None:
            stripped = src[i:].lstrip()
            if not stripped:
                break
            pos = len(src) - len(stripped)
            raise ParseError(pos, "a token", repr(src[pos]))
        toks.append(_Token(m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        i = m.end()
    toks.append(_Token("end", "", len(src)))
    return toks


_FUNCTIONS = {"exp", "abs", "max", "min"}


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    @property
    def cur(self) -> _Token:
        return self.toks[self.i]

    def advance(self) -> _Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, expected: str):
        tok = self.cur
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(tok.pos, expected, found)

    def expect_op(self, op: str) -> _Token:
        if self.cur.kind == "op" and self.cur.text == op:
            return self.advance()
        self.fail(f"'{op}'")

    def parse(self) -> Node:
        node = self.additive()
        if self.cur.kind != "end":
            self.fail("end of input")
        return node

    def additive(self) -> Node:
        node = self.multiplicative()
        while self.cur.kind == "op" and self.cur.text in "+-":
            op = self.advance().text
            right = self.multiplicative()
            node = Binary(op, node, right, span=(node.span[0], right.span[1]))
        return node

    def multiplicative(self) -> Node:
        node = self.unary()
        while self.cur.kind == "op" and self.cur.text in "*/":
            op = self.advance().text
            right = self.unary()
            node = Binary(op, node, right, span=(node.span[0], right.span[1]))
        return node

    def unary(self) -> Node:
        if self.cur.kind == "op" and self.cur.text == "-":
            tok = self.advance()
            arg = self.unary()
            return Unary("neg", arg, span=(tok.pos, arg.span[1]))
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if not (self.cur.kind == "op" and self.cur.text == "^"):
            return base
        self.advance()
        exponent = self.exponent()
        if self.cur.kind == "op" and self.cur.text == "^":
            self.fail("a single numeric exponent")
        return Binary("^", base, exponent, span=(base.span[0], exponent.span[1]))

    def exponent(self) -> Number:
        # exponents are numeric literals, optionally signed
        neg = None
        if self.cur.kind == "op" and self.cur.text == "-":
            neg = self.advance()
        if self.cur.kind != "num":
            self.fail("a numeric exponent")
        tok = self.advance()
        value = float(tok.text)
        start = neg.pos if neg else tok.pos
        if neg:
            value = -value
        return Number(value, span=(start, tok.pos + len(tok.text)))

    def atom(self) -> Node:
        tok = self.cur
        if tok.kind == "num":
            self.advance()
            return Number(float(tok.text), span=(tok.pos, tok.pos + len(tok.text)))
        if tok.kind == "name":
            if tok.text in ("x", "y"):
                self.advance()
                return Var(tok.text, span=(tok.pos, tok.pos + len(tok.text)))
            if tok.text in _FUNCTIONS:
                return self.call(self.advance())
            self.fail("x, y, a number, or a function name")
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.additive()
            self.expect_op(")")
            return node
        self.fail("an expression")

    def call(self, name: _Token) -> Node:
        self.expect_op("(")
        first = self.additive()
        if name.text in ("max", "min"):
            self.expect_op(",")
            second = self.additive()
            close = self.expect_op(")")
            return Call(name.text, (first, second), span=(name.pos, close.pos + 1))
        close = self.expect_op(")")
        return Unary(name.text, first, span=(name.pos, close.pos + 1))


def parse(src: str) -> Node:
    """Parse an expression in x and y, raising ParseError on the first failure."""
    if not src.strip():
        raise ParseError(0, "an expression", "end of input")
    return _Parser(src).parse()


def _where(node: Node) -> str:
    if node.span is not None:
        return f"at offsets {node.span[0]}..{node.span[1]}"
    return "in subexpression"


def _finite(out, node: Node):
    ok = np.all(np.isfinite(out)) if isinstance(out, np.ndarray) else np.isfinite(out)
    if not ok:
        raise EvaluationError(f"non-finite result {_where(node)}")
    return out


def eval_ast(node: Node, x, y):
    """Evaluate at scalars or numpy arrays (elementwise); non-finite results raise."""
    with np.errstate(all="ignore"):
        return _eval(node, x, y)


def _eval(node: Node, x, y):
    match node:
        case Number(value=v):
            return v
        case Var(name=name):
            return x if name == "x" else y
        case Unary(op="neg", arg=arg):
            return _finite(-_eval(arg, x, y), node)
        case Unary(op="abs", arg=arg):
            return _finite(np.abs(_eval(arg, x, y)), node)
        case Unary(op="exp", arg=arg):
            return _finite(np.exp(_eval(arg, x, y)), node)
        case Binary(op="+", left=l, right=r):
            return _finite(_eval(l, x, y) + _eval(r, x, y), node)
        case Binary(op="-", left=l, right=r):
            return _finite(_eval(l, x, y) - _eval(r, x, y), node)
        case Binary(op="*", left=l, right=r):
            return _finite(_eval(l, x, y) * _eval(r, x, y), node)
        case Binary(op="/", left=l, right=r):
            return _finite(np.true_divide(_eval(l, x, y), _eval(r, x, y)), node)
        case Binary(op="^", left=l, right=r):
            return _finite(np.power(_eval(l, x, y), _eval(r, x, y)), node)
        case Call(fn="max", args=(a, b)):
            return _finite(np.maximum(_eval(a, x, y), _eval(b, x, y)), node)
        case Call(fn="min", args=(a, b)):
            return _finite(np.minimum(_eval(a, x, y), _eval(b, x, y)), node)
    raise EvaluationError(f"malformed syntax tree node {node!r}")


_BINARY_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}
_ATOM_PREC = 5
_NEG_PREC = 3


def _prec(node: Node) -> int:
    match node:
        case Binary(op=op):
            return _BINARY_PREC[op]
        case Unary(op="neg"):
            return _NEG_PREC
        case _:
            return _ATOM_PREC


def to_string(node: Node) -> str:
    """Render with minimal parentheses; reparsing yields a structurally equal tree."""

    def wrap(child: Node, min_prec: int) -> str:
        s = to_string(child)
        return f"({s})" if _prec(child) < min_prec else s

    match node:
        case Number(value=v):
            return repr(v)
        case Var(name=name):
            return name
        case Unary(op="neg", arg=arg):
            return "-" + wrap(arg, _NEG_PREC)
        case Unary(op=op, arg=arg):
            return f"{op}({to_string(arg)})"
        case Call(fn=fn, args=(a, b)):
            return f"{fn}({to_string(a)},{to_string(b)})"
        case Binary(op="^", left=l, right=r):
            return wrap(l, _ATOM_PREC) + "^" + to_string(r)
        case Binary(op=op, left=l, right=r):
            prec = _BINARY_PREC[op]
            return wrap(l, prec) + op + wrap(r, prec + 1)
    raise ValueError(f"malformed syntax tree node {node!r}")
