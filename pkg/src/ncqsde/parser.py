"""Expression syntax for operator polynomials.

Grammar (precedence ^ > unary minus > * > binary +/-)::

    expr  := term (("+" | "-") term)*
    term  := unary ("*" unary)*
    unary := ("-" | "+") unary | power
    power := atom ("^" INT)*
    atom  := INT ["/" INT] | "i" | VAR | FUNC "(" expr ")" | "(" expr ")"

``*`` keeps operand order: the algebra is noncommutative. Division only
occurs inside rational literals.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from math import factorial

from .errors import (BadExponent, CapRequired, DegreeOverflow, ExpressionSyntaxError, SeriesArgumentError,
                     UnknownVariable)
from .ncpoly import I, NcPoly, ONE, Scalar, VarId, Word

FUNCTIONS = ("cos", "sin", "exp")
_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+)|(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


@dataclass(frozen=True)
class Num:
    value: Scalar
    pos: int = 0


@dataclass(frozen=True)
class Var:
    var: VarId
    pos: int = 0


@dataclass(frozen=True)
class Neg:
    operand: object
    pos: int = 0


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "*"
    left: object
    right: object
    pos: int = 0


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    pos: int = 0


@dataclass(frozen=True)
class Call:
    name: str
    arg: object
    pos: int = 0


@dataclass(frozen=True)
class ExprAst:
    root: object
    modes: int
    source: str = ""


def tokenize(src: str) -> list:
    tokens = []
    pos = 0
    while pos < len(src):
        mt = _TOKEN.match(src, pos)
        if mt.end() == pos or (mt.group(0).strip() == "" and mt.end() >= len(src)):
            break
        start = mt.start(mt.lastindex) if mt.lastindex else pos
        if mt.group(1):
            raise ExpressionSyntaxError(
                f"floating literal {mt.group(1)!r} not accepted; write a fraction like 1/2", start)
        if mt.group(2):
            tokens.append(("INT", mt.group(2), start))
        elif mt.group(3):
            tokens.append(("NAME", mt.group(3), start))
        elif mt.group(4):
            ch = mt.group(4)
            if ch not in "+-*/^()":
                raise ExpressionSyntaxError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = mt.end()
    tokens.append(("END", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, modes: int):
        self.src = src
        self.modes = modes
        self.tokens = tokenize(src)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def take(self, kind=None):
        tok = self.tokens[self.k]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "END" else repr(tok[1])
            raise ExpressionSyntaxError(f"expected {kind!r}, found {what}", tok[2])
        self.k += 1
        return tok

    def parse(self):
        if self.peek()[0] == "END":
            raise ExpressionSyntaxError("empty expression", 0)
        node = self.expr()
        tok = self.peek()
        if tok[0] != "END":
            raise ExpressionSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op, _, pos = self.take()
            node = BinOp(op, node, self.term(), pos)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "*":
            _, _, pos = self.take()
            node = BinOp("*", node, self.unary(), pos)
        return node

    def unary(self):
        kind, _, pos = self.peek()
        if kind == "-":
            self.take()
            return Neg(self.unary(), pos)
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        while self.peek()[0] == "^":
            _, _, pos = self.take()
            kind, text, epos = self.peek()
            if kind != "INT":
                raise BadExponent("exponent must be a non-negative integer literal", epos)
            self.take()
            node = Pow(node, int(text), pos)
        return node

    def atom(self):
        kind, text, pos = self.take()
        if kind == "INT":
            if self.peek()[0] == "/":
                self.take()
                dkind, dtext, dpos = self.peek()
                if dkind != "INT":
                    raise ExpressionSyntaxError("'/' only forms rational literals a/b", dpos)
                self.take()
                if int(dtext) == 0:
                    raise ExpressionSyntaxError("zero denominator", dpos)
                return Num(Scalar(Fraction(int(text), int(dtext))), pos)
            return Num(Scalar(int(text)), pos)
        if kind == "NAME":
            if text == "i":
                return Num(I, pos)
            if text in FUNCTIONS:
                self.take("(")
                arg = self.expr()
                self.take(")")
                return Call(text, arg, pos)
            return Var(self.variable(text, pos), pos)
        if kind == "(":
            node = self.expr()
            self.take(")")
            return node
        if kind == "END":
            raise ExpressionSyntaxError("unexpected end of input", pos)
        raise ExpressionSyntaxError(f"unexpected {text!r}", pos)

    def variable(self, text: str, pos: int) -> VarId:
        mt = re.fullmatch(r"([qp])(\d*)", text)
        if not mt:
            raise UnknownVariable(f"unknown name {text!r}", pos)
        kind, digits = mt.groups()
        if not digits:
            if self.modes != 1:
                raise UnknownVariable(
                    f"bare {text!r} is ambiguous with {self.modes} modes; use {text}1..{text}{self.modes}",
                    pos)
            return VarId(kind, 1)
        mode = int(digits)
        if not 1 <= mode <= self.modes:
            raise UnknownVariable(f"{text!r} is out of range for {self.modes} mode(s)", pos)
        return VarId(kind, mode)


def parse_variable(name: str, modes: int = 1) -> VarId:
    """Resolve a single generator name such as "q", "p2"."""
    return _Parser("", modes).variable(name.strip(), 0)


def parse(src: str, modes: int = 1) -> ExprAst:
    return ExprAst(_Parser(src, modes).parse(), modes, src)


# -- elaboration --------------------------------------------------------------------

def _series_coefficients(name: str, cap: int) -> list:
    """(power, coefficient) pairs of the Maclaurin series up to degree cap."""
    out = []
    for k in range(cap + 1):
        if name == "exp":
            out.append((k, Fraction(1, factorial(k))))
        elif name == "cos" and k % 2 == 0:
            out.append((k, Fraction((-1) ** (k // 2), factorial(k))))
        elif name == "sin" and k % 2 == 1:
            out.append((k, Fraction((-1) ** (k // 2), factorial(k))))
    return out


def series(name: str, arg: NcPoly, cap: int) -> NcPoly:
    """Truncated Maclaurin series of cos/sin/exp with an operator argument.

    The argument must have no constant term so that dropping degrees above
    the cap is exact.
    """
    if not arg.constant_term() == 0:
        raise SeriesArgumentError(f"{name} argument {arg} has a constant term")
    if arg.degree > cap:
        raise DegreeOverflow(f"{name} argument of degree {arg.degree} exceeds cap {cap}")
    total = NcPoly.zero(arg.modes)
    power = NcPoly.const(ONE, arg.modes)
    last = 0
    for k, c in _series_coefficients(name, cap):
        while last < k:
            power = (power * arg).truncate(cap)
            last += 1
        total = total + power.scale(c)
    return total


def elaborate(ast: ExprAst, cap: int | None = None) -> NcPoly:
    """Evaluate an AST into a normal-ordered NcPoly.

    ``cap`` is the truncation degree for cos/sin/exp; polynomial products
    outside a function call are exact.
    """
    m = ast.modes

    def ev(node) -> NcPoly:
        if isinstance(node, Num):
            return NcPoly.const(node.value, m)
        if isinstance(node, Var):
            return NcPoly.var(node.var, m)
        if isinstance(node, Neg):
            return -ev(node.operand)
        if isinstance(node, BinOp):
            a, b = ev(node.left), ev(node.right)
            if node.op == "+":
                return a + b
            if node.op == "-":
                return a - b
            return a * b
        if isinstance(node, Pow):
            return ev(node.base) ** node.exponent
        if isinstance(node, Call):
            if cap is None:
                raise CapRequired(f"{node.name}() needs a degree cap", node.pos)
            return series(node.name, ev(node.arg), cap)
        raise TypeError(f"unknown node {node!r}")

    return ev(ast.root)


def expand_words(ast: ExprAst) -> list:
    """Distribute a function-free AST into Words, keeping factor order.

    Words with identical factor sequences are merged.
    """

    def ev(node) -> list:
        if isinstance(node, Num):
            return [Word(node.value, ())]
        if isinstance(node, Var):
            return [Word(1, (node.var,))]
        if isinstance(node, Neg):
            return [Word(-w.coefficient, w.factors) for w in ev(node.operand)]
        if isinstance(node, BinOp):
            a, b = ev(node.left), ev(node.right)
            if node.op == "+":
                return a + b
            if node.op == "-":
                return a + [Word(-w.coefficient, w.factors) for w in b]
            return [Word(x.coefficient * y.coefficient, x.factors + y.factors)
                    for x, y in cartesian(a, b)]
        if isinstance(node, Pow):
            out = [Word(1, ())]
            base = ev(node.base)
            for _ in range(node.exponent):
                out = [Word(x.coefficient * y.coefficient, x.factors + y.factors)
                       for x, y in cartesian(out, base)]
            return out
        if isinstance(node, Call):
            raise CapRequired(f"{node.name}() cannot be expanded into words", node.pos)
        raise TypeError(f"unknown node {node!r}")

    merged: dict = {}
    for w in ev(ast.root):
        merged[w.factors] = merged.get(w.factors, 0) + w.coefficient
    return [Word(c, f) for f, c in merged.items() if c]


def parse_poly(src: str, modes: int = 1, cap: int | None = None) -> NcPoly:
    return elaborate(parse(src, modes), cap)


def parse_scalar(src: str) -> Scalar:
    X = parse_poly(src, 1)
    if not X.is_constant():
        raise ExpressionSyntaxError(f"{src!r} is not a scalar", 0)
    return X.constant_term()
